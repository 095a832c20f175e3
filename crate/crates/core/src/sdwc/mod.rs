//! Weighted consensus for short sequences whose heavy strings differ at
//! every position: light solid prefixes and suffixes joined over dyadic
//! intervals.

mod light;
mod star;

pub use light::{light_prefixes, light_suffixes, SolidFactorRep};
pub use star::{basic_intervals, build_l_r, star_lists, BasicInterval, EndLists, StarLists};

use crate::alphabet::Letter;
use crate::error::{domain, Result};
use crate::neglog::{NegLog, ProbThreshold, ONE_BIT};
use crate::weighted::{match_neglog, WeightedSequence};

/// Which of the two sequences plays a role.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    X,
    Y,
}

impl Side {
    /// Probability of `rep` in this side's sequence.
    pub fn key(self, rep: &SolidFactorRep) -> NegLog {
        match self {
            Side::X => rep.p1,
            Side::Y => rep.p2,
        }
    }

    fn other(self) -> Side {
        match self {
            Side::X => Side::Y,
            Side::Y => Side::X,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SdwcInstance {
    pub(crate) x: WeightedSequence,
    pub(crate) y: WeightedSequence,
    pub(crate) z: ProbThreshold,
}

impl SdwcInstance {
    /// Checks `|X| = |Y| = n ≤ 2⌊log z⌋`, `λ ≤ z`, no empty position and
    /// heavy letters differing everywhere.
    pub fn new(x: WeightedSequence, y: WeightedSequence, z: ProbThreshold) -> Result<Self> {
        if x.len() != y.len() {
            return domain(format!("sequences of lengths {} and {}", x.len(), y.len()));
        }
        if x.alphabet() != y.alphabet() {
            return domain("sequences use different alphabets");
        }
        let n = x.len();
        if n as u64 > 2 * z.floor_log2() as u64 {
            return domain(format!("length {n} exceeds 2⌊log z⌋ = {}", 2 * z.floor_log2()));
        }
        let lambda = x.lambda().max(y.lambda());
        if lambda as f64 > z.z() {
            return domain(format!("λ = {lambda} exceeds z"));
        }
        let (hx, hy) = (x.heavy_string()?, y.heavy_string()?);
        if let Some(i) = (0..n).find(|&i| hx[i] == hy[i]) {
            return domain(format!("heavy letters agree at position {}", i + 1));
        }
        Ok(SdwcInstance { x, y, z })
    }

    pub fn x(&self) -> &WeightedSequence {
        &self.x
    }

    pub fn y(&self) -> &WeightedSequence {
        &self.y
    }

    pub fn z(&self) -> &ProbThreshold {
        &self.z
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn lambda(&self) -> usize {
        self.x.lambda().max(self.y.lambda())
    }

    /// Fixed-point `log z_ℓ` and `log z_r` with `z_ℓ·z_r ≥ z`, splitting
    /// `z` as `√(z/λ)` and `√(zλ)`, both rounded up and clamped to `[1, z]`.
    pub fn split_thresholds(&self) -> (NegLog, NegLog) {
        let z = self.z.neglog().units() as u128;
        let lam = ((self.lambda().max(1) as f64).log2() * ONE_BIT as f64).ceil() as u128;
        let left = z.saturating_sub(lam).div_ceil(2);
        let right = z.min((z + lam).div_ceil(2));
        (NegLog::from_units(left as u64), NegLog::from_units(right as u64))
    }
}

/// Keeps the elements no other element beats strictly on both
/// probabilities. `list` must be sorted by `order`; so is the result.
fn undominated(list: &[SolidFactorRep], order: Side) -> Vec<&SolidFactorRep> {
    let other = order.other();
    let mut out = Vec::with_capacity(list.len());
    let mut best_before = NegLog::INF;
    let mut i = 0;
    while i < list.len() {
        let key = order.key(&list[i]);
        let mut j = i;
        let mut group_best = NegLog::INF;
        while j < list.len() && order.key(&list[j]) == key {
            let q = other.key(&list[j]);
            if q <= best_before {
                out.push(&list[j]);
            }
            group_best = group_best.min(q);
            j += 1;
        }
        best_before = best_before.min(group_best);
        i = j;
    }
    out
}

/// Reorders an undominated list sorted by `from` into the other order:
/// reversal, then sorting runs of equal `from` keys.
fn reorder(mut list: Vec<&SolidFactorRep>, from: Side) -> Vec<&SolidFactorRep> {
    list.reverse();
    let to = from.other();
    let mut i = 0;
    while i < list.len() {
        let key = from.key(list[i]);
        let mut j = i + 1;
        while j < list.len() && from.key(list[j]) == key {
            j += 1;
        }
        list[i..j].sort_by_key(|r| to.key(r));
        i = j;
    }
    list
}

/// Joins a prefix from `l` with a suffix from `r` into a string matching
/// both sequences. Both lists must be sorted by `order`.
pub fn meet(l: &[SolidFactorRep], r: &[SolidFactorRep], order: Side, z: &ProbThreshold) -> Result<Option<Vec<Letter>>> {
    meet_mixed(l, order, r, order, z)
}

fn meet_mixed(
    l: &[SolidFactorRep],
    l_order: Side,
    r: &[SolidFactorRep],
    r_order: Side,
    z: &ProbThreshold,
) -> Result<Option<Vec<Letter>>> {
    if l.iter().any(|e| e.len() != l[0].len()) || r.iter().any(|e| e.len() != r[0].len()) {
        return domain("meet lists mix factor lengths");
    }
    debug_assert!(l.windows(2).all(|w| l_order.key(&w[0]) <= l_order.key(&w[1])));
    debug_assert!(r.windows(2).all(|w| r_order.key(&w[0]) <= r_order.key(&w[1])));
    if l.is_empty() || r.is_empty() {
        return Ok(None);
    }
    let l = undominated(l, l_order);
    let mut r = undominated(r, r_order);
    if r_order != l_order {
        r = reorder(r, r_order);
    }
    let (a, b) = (l_order, l_order.other());
    let zn = z.neglog();
    // Prefix minima of the other probability over r, by increasing `a`.
    let mut best = Vec::with_capacity(r.len());
    for (t, e) in r.iter().enumerate() {
        let keep = match best.last() {
            Some(&k) if b.key(r[k]) <= b.key(e) => k,
            _ => t,
        };
        best.push(keep);
    }
    let mut top = r.len();
    for p in &l {
        let pa = a.key(p);
        if pa > zn {
            break;
        }
        let budget = zn.units() - pa.units();
        while top > 0 && a.key(r[top - 1]).units() > budget {
            top -= 1;
        }
        if top == 0 {
            break;
        }
        let q = r[best[top - 1]];
        if b.key(p) + b.key(q) <= zn {
            let mut s = p.letters.clone();
            s.extend_from_slice(&q.letters);
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// A string matching both sequences with probability at least `1/z`, if
/// one exists. Tries `(U, V)` in the order `(X,X), (X,Y), (Y,X), (Y,Y)`.
pub fn solve(inst: &SdwcInstance) -> Option<Vec<Letter>> {
    if inst.is_empty() {
        return Some(Vec::new());
    }
    let n = inst.len();
    for (u, v) in [(Side::X, Side::X), (Side::X, Side::Y), (Side::Y, Side::X), (Side::Y, Side::Y)] {
        let stars = star_lists(inst, u, v, build_l_r(inst, u, v));
        if let Some(s) = search(inst, &stars, u, v, 1, star::top_layer(n)) {
            debug_assert!(inst.z.admits(match_neglog(&s, &inst.x).unwrap()));
            debug_assert!(inst.z.admits(match_neglog(&s, &inst.y).unwrap()));
            return Some(s);
        }
    }
    None
}

fn search(inst: &SdwcInstance, stars: &StarLists, u: Side, v: Side, a: usize, layer: u32) -> Option<Vec<Letter>> {
    if layer == 0 {
        return None;
    }
    let half = 1usize << (layer - 1);
    let b = (inst.len() + 1).min(a + 2 * half - 1);
    let c = a + half - 1;
    if c >= b {
        return search(inst, stars, u, v, a, layer - 1);
    }
    let (l, _) = stars.get(a, layer - 1);
    let (_, r) = stars.get(c + 1, layer - 1);
    meet_mixed(l, u, r, v, &inst.z)
        .expect("star lists have uniform lengths")
        .or_else(|| search(inst, stars, u, v, a, layer - 1))
        .or_else(|| search(inst, stars, u, v, c + 1, layer - 1))
}

/// Same answer as [`solve`], via the knapsack solver that guesses `k`
/// classes.
pub fn solve_fast(inst: &SdwcInstance, k: usize) -> Result<Option<Vec<Letter>>> {
    crate::consensus::weighted_consensus(&inst.x, &inst.y, &inst.z, crate::consensus::Algo::K(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::reference::naive_consensus;
    use proptest::prelude::*;

    fn rep(s: &str, p1: f64, p2: f64) -> SolidFactorRep {
        SolidFactorRep {
            letters: Alphabet::parse("ab").unwrap().encode(s).unwrap(),
            p1: NegLog::from_probability(p1).unwrap(),
            p2: NegLog::from_probability(p2).unwrap(),
        }
    }

    #[test]
    fn meet_examples() {
        let z = ProbThreshold::new(4.0).unwrap();
        let got = meet(&[rep("a", 0.5, 0.5)], &[rep("b", 0.5, 0.5)], Side::X, &z).unwrap();
        assert_eq!(got, Some(vec![0, 1]));
        assert_eq!(meet(&[], &[rep("b", 0.5, 0.5)], Side::X, &z).unwrap(), None);
        assert_eq!(meet(&[rep("a", 0.5, 0.5)], &[], Side::Y, &z).unwrap(), None);
        assert!(meet(&[rep("a", 0.5, 0.5), rep("ab", 0.5, 0.5)], &[], Side::X, &z).is_err());
        let tight = ProbThreshold::new(3.0).unwrap();
        assert_eq!(meet(&[rep("a", 0.5, 0.5)], &[rep("b", 0.5, 0.5)], Side::X, &tight).unwrap(), None);
    }

    #[test]
    fn instance_checks() {
        let ab = Alphabet::parse("ab").unwrap();
        let x = WeightedSequence::from_probabilities(ab.clone(), &[vec![0.75, 0.25]]).unwrap();
        let y = WeightedSequence::from_probabilities(ab.clone(), &[vec![0.25, 0.75]]).unwrap();
        assert!(SdwcInstance::new(x.clone(), x.clone(), ProbThreshold::new(4.0).unwrap()).is_err());
        assert!(SdwcInstance::new(x.clone(), y.clone(), ProbThreshold::new(1.5).unwrap()).is_err());
        let inst = SdwcInstance::new(x.clone(), y.clone(), ProbThreshold::new(4.0).unwrap()).unwrap();
        assert!(matches!(solve(&inst).as_deref(), Some([_])));
        let tight = SdwcInstance::new(x, y, ProbThreshold::new(2.0).unwrap()).unwrap();
        assert_eq!(solve(&tight), None);
    }

    #[test]
    fn disjoint_supports_have_no_consensus() {
        let ab = Alphabet::parse("abcd").unwrap();
        let x = WeightedSequence::from_probabilities(ab.clone(), &vec![vec![0.5, 0.5, 0.0, 0.0]; 2]).unwrap();
        let y = WeightedSequence::from_probabilities(ab, &vec![vec![0.0, 0.0, 0.5, 0.5]; 2]).unwrap();
        let inst = SdwcInstance::new(x, y, ProbThreshold::power_of_two(10)).unwrap();
        assert_eq!(solve(&inst), None);
    }

    #[test]
    fn thresholds_cover_z() {
        let ab = Alphabet::synthetic(3);
        let x = WeightedSequence::from_probabilities(ab.clone(), &[vec![0.5, 0.3, 0.2]]).unwrap();
        let y = WeightedSequence::from_probabilities(ab, &[vec![0.3, 0.5, 0.2]]).unwrap();
        for z in [3.0, 5.5, 64.0, 1000.0] {
            let inst = SdwcInstance::new(x.clone(), y.clone(), ProbThreshold::new(z).unwrap()).unwrap();
            let (l, r) = inst.split_thresholds();
            assert!(l.units() + r.units() >= inst.z.neglog().units());
            assert!(l <= r && r <= inst.z.neglog());
        }
    }

    /// Random dissimilar pair over four letters.
    pub(crate) fn dissimilar(seed: &[(u8, u8, u8)], lambda: usize) -> (WeightedSequence, WeightedSequence) {
        let ab = Alphabet::synthetic(4);
        let row = |a: u8, b: u8, heavy: usize| {
            let k = 1 + (a as usize) % lambda;
            let mut probs = vec![0.0; 4];
            let mut weights: Vec<f64> = (0..k).map(|t| 1.0 + ((b as usize * 7 + t * 3) % 5) as f64).collect();
            weights[0] += 10.0;
            let total: f64 = weights.iter().sum();
            for (t, wt) in weights.iter().enumerate() {
                probs[(heavy + t * (1 + a as usize % 3)) % 4] += wt / total;
            }
            probs
        };
        let xs: Vec<_> = seed.iter().map(|&(a, b, c)| row(a, b, c as usize % 4)).collect();
        let ys: Vec<_> = seed.iter().map(|&(a, b, c)| row(b, a, (c as usize + 1 + a as usize % 3) % 4)).collect();
        (
            WeightedSequence::from_probabilities(ab.clone(), &xs).unwrap(),
            WeightedSequence::from_probabilities(ab, &ys).unwrap(),
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn agrees_with_enumeration(
            seed in prop::collection::vec((any::<u8>(), any::<u8>(), any::<u8>()), 0..12),
            lambda in 1usize..5, zk in 2u32..9,
        ) {
            let z = ProbThreshold::power_of_two(zk);
            let n = seed.len().min(2 * zk as usize);
            let (x, y) = dissimilar(&seed[..n], lambda);
            let inst = SdwcInstance::new(x.clone(), y.clone(), z).unwrap();
            let got = solve(&inst);
            let want = naive_consensus(&x, &y, &z).unwrap();
            prop_assert_eq!(got.is_some(), want.is_some());
            if let Some(s) = got {
                prop_assert!(z.admits(match_neglog(&s, &x).unwrap()));
                prop_assert!(z.admits(match_neglog(&s, &y).unwrap()));
            }
        }

        #[test]
        fn meet_agrees_with_pairing(
            l in prop::collection::vec((0u64..40, 0u64..40), 0..20),
            r in prop::collection::vec((0u64..40, 0u64..40), 0..20),
            zu in 0u64..80, ly in any::<bool>(), ry in any::<bool>(),
        ) {
            let mk = |v: &[(u64, u64)], tag: u32| {
                v.iter().enumerate().map(|(i, &(a, b))| SolidFactorRep {
                    letters: vec![tag, i as u32],
                    p1: NegLog::from_units(a), p2: NegLog::from_units(b),
                }).collect::<Vec<_>>()
            };
            let side = |y: bool| if y { Side::Y } else { Side::X };
            let (lo, ro) = (side(ly), side(ry));
            let mut ll = mk(&l, 0);
            let mut rr = mk(&r, 1);
            ll.sort_by_key(|e| lo.key(e));
            rr.sort_by_key(|e| ro.key(e));
            for (i, e) in ll.iter_mut().enumerate() { e.letters[1] = i as u32; }
            for (i, e) in rr.iter_mut().enumerate() { e.letters[1] = i as u32; }
            let z = ProbThreshold::from_neglog(NegLog::from_units(zu));
            let want = ll.iter().any(|p| rr.iter().any(|q| (p.p1 + q.p1).units() <= zu && (p.p2 + q.p2).units() <= zu));
            let got = meet_mixed(&ll, lo, &rr, ro, &z).unwrap();
            prop_assert_eq!(got.is_some(), want);
            if let Some(s) = got {
                let p = &ll[s[1] as usize];
                let q = &rr[s[3] as usize];
                prop_assert!((p.p1 + q.p1).units() <= zu && (p.p2 + q.p2).units() <= zu);
            }
        }
    }
}
