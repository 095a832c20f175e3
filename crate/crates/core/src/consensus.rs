//! Weighted consensus through multichoice knapsack, the reverse reduction,
//! and general weighted pattern matching built on top.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use crate::alphabet::{Alphabet, Letter};
use crate::error::{domain, Error, Result};
use crate::knapsack::{self, Choice, KnapsackInstance};
use crate::lcp::CrossIndex;
use crate::neglog::{NegLog, ProbThreshold, FRACTION_BITS};
use crate::reference;
use crate::sdwc::{self, SdwcInstance};
use crate::weighted::{match_neglog, WeightedSequence};

/// Solver selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Algo {
    /// Meet-in-the-middle, or the `k` variant when `λ` and `z` make it
    /// cheaper; the dissimilar solver inside pattern matching.
    #[default]
    Auto,
    Naive,
    Mim,
    K(usize),
    Sdwc,
}

impl FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Algo::Auto),
            "naive" => Ok(Algo::Naive),
            "mim" => Ok(Algo::Mim),
            "sdwc" => Ok(Algo::Sdwc),
            _ => match s.strip_prefix("k=").map(str::parse::<usize>) {
                Some(Ok(k)) if k >= 1 => Ok(Algo::K(k)),
                _ => domain(format!("unknown algorithm {s:?}")),
            },
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algo::Auto => write!(f, "auto"),
            Algo::Naive => write!(f, "naive"),
            Algo::Mim => write!(f, "mim"),
            Algo::K(k) => write!(f, "k={k}"),
            Algo::Sdwc => write!(f, "sdwc"),
        }
    }
}

/// Two weighted sequences of equal length and a threshold.
#[derive(Debug, Clone)]
pub struct WcInstance {
    pub x: WeightedSequence,
    pub y: WeightedSequence,
    pub z: ProbThreshold,
}

impl WcInstance {
    pub fn new(x: WeightedSequence, y: WeightedSequence, z: ProbThreshold) -> Result<Self> {
        check_pair(&x, &y)?;
        Ok(WcInstance { x, y, z })
    }
}

fn check_pair(x: &WeightedSequence, y: &WeightedSequence) -> Result<()> {
    if x.len() != y.len() {
        return domain(format!("sequences of lengths {} and {}", x.len(), y.len()));
    }
    if x.alphabet() != y.alphabet() {
        return domain("sequences use different alphabets");
    }
    Ok(())
}

/// Knapsack form of a consensus instance. `instance` is `None` when some
/// position has no letter common to both sequences.
#[derive(Debug, Clone)]
pub struct WcKnapsack {
    pub instance: Option<KnapsackInstance<i64>>,
    /// Letter behind each item, per class.
    pub letters: Vec<Vec<Letter>>,
}

impl WcKnapsack {
    pub fn decode(&self, choice: &Choice) -> Vec<Letter> {
        choice.picks.iter().enumerate().map(|(i, &j)| self.letters[i][j]).collect()
    }
}

/// One class per position, one item per letter present in both sequences,
/// with value and weight the NegLog units in `x` and `y`.
pub fn wc_to_knapsack(x: &WeightedSequence, y: &WeightedSequence, z: &ProbThreshold) -> Result<WcKnapsack> {
    check_pair(x, y)?;
    let mut classes = Vec::with_capacity(x.len());
    let mut letters = Vec::with_capacity(x.len());
    let mut total_max = 0u128;
    for i in 0..x.len() {
        let (items, ls): (Vec<(i64, i64)>, Vec<Letter>) = x
            .row(i)
            .iter()
            .filter_map(|&(s, px)| {
                let py = y.prob(i, s);
                (py != NegLog::INF).then(|| ((px.units() as i64, py.units() as i64), s))
            })
            .unzip();
        if items.is_empty() {
            return Ok(WcKnapsack { instance: None, letters: Vec::new() });
        }
        total_max += items.iter().map(|&(v, w)| v.max(w) as u128).max().unwrap();
        classes.push(items);
        letters.push(ls);
    }
    if classes.is_empty() {
        return Ok(WcKnapsack { instance: None, letters });
    }
    // Thresholds beyond every reachable sum are clamped to keep i64 room.
    let cap = (z.neglog().units() as u128).min(total_max).min(i64::MAX as u128) as i64;
    let instance = KnapsackInstance::new(classes, cap, cap)?;
    Ok(WcKnapsack { instance: Some(instance), letters })
}

/// Regime test for the `k` variant: the first `k ≤ 3` with
/// `λ^{2k-1} ≤ z ≤ λ^{2k+1}` whose estimated cost
/// `z^{(k+1)/(2k+1)} + λ^k` beats `√(zλ)`.
pub fn profitable_k(lambda: usize, z: &ProbThreshold) -> Option<usize> {
    if lambda < 2 {
        return None;
    }
    let (l, lz) = ((lambda as f64).log2(), z.neglog().bits());
    let mim = 0.5 * (lz + l);
    (1..=3usize).find(|&k| {
        let kf = k as f64;
        let in_regime = (2.0 * kf - 1.0) * l <= lz && lz <= (2.0 * kf + 1.0) * l;
        let cost = ((kf + 1.0) / (2.0 * kf + 1.0) * lz).exp2() + (kf * l).exp2();
        in_regime && cost.log2() < mim
    })
}

/// A string matching both `x` and `y` with probability at least `1/z`.
pub fn weighted_consensus(
    x: &WeightedSequence,
    y: &WeightedSequence,
    z: &ProbThreshold,
    algo: Algo,
) -> Result<Option<Vec<Letter>>> {
    check_pair(x, y)?;
    let found = match algo {
        Algo::Naive => reference::naive_consensus(x, y, z)?,
        Algo::Sdwc => sdwc::solve(&SdwcInstance::new(x.clone(), y.clone(), *z)?),
        Algo::Auto | Algo::Mim | Algo::K(_) => {
            if x.is_empty() {
                return Ok(Some(Vec::new()));
            }
            let red = wc_to_knapsack(x, y, z)?;
            let Some(inst) = &red.instance else { return Ok(None) };
            let k = match algo {
                Algo::K(k) => Some(k),
                Algo::Auto => profitable_k(inst.lambda(), z),
                _ => None,
            };
            let choice = match k {
                Some(k) => knapsack::solve_k(inst, k)?,
                None => knapsack::solve(inst),
            };
            choice.map(|c| red.decode(&c))
        }
    };
    if let Some(s) = &found {
        debug_assert!(z.admits(match_neglog(s, x)?) && z.admits(match_neglog(s, y)?));
    }
    Ok(found)
}

/// Consensus instance equivalent to a knapsack instance.
///
/// Values and weights are shifted to per-class minimum zero, scaled by the
/// power of two `M ≥ max(n, V, W)` and turned into probabilities
/// `2^{-(t_i + v)/M}` with `t_i = ⌈M log |C_i|⌉`; a final single-letter
/// position evens out the two thresholds. With `normalize`, two extra
/// letters absorb the missing probability mass of each row.
pub fn knapsack_to_wc(inst: &KnapsackInstance<i64>, normalize: bool) -> Result<WcInstance> {
    let n = inst.n();
    let lambda = inst.lambda().max(2);
    let size = lambda + if normalize { 2 } else { 0 };
    let alphabet = Alphabet::synthetic(size);
    let v_min: Vec<i64> = inst.classes().iter().map(|c| c.v_min()).collect();
    let w_min: Vec<i64> = inst.classes().iter().map(|c| c.w_min()).collect();
    let v_cap = inst.v_cap() as i128 - v_min.iter().map(|&v| v as i128).sum::<i128>();
    let w_cap = inst.w_cap() as i128 - w_min.iter().map(|&w| w as i128).sum::<i128>();
    if v_cap < 0 || w_cap < 0 {
        // No choice fits: a position whose letters differ between sides.
        let x = WeightedSequence::from_rows(alphabet.clone(), vec![vec![(0, NegLog::ONE)]])?;
        let y = WeightedSequence::from_rows(alphabet, vec![vec![(1, NegLog::ONE)]])?;
        return WcInstance::new(x, y, ProbThreshold::power_of_two(0));
    }
    let scale = (n as u128).max(v_cap as u128).max(w_cap as u128).max(1).next_power_of_two();
    if scale > 1 << FRACTION_BITS {
        return Err(Error::Overflow(format!("scale {scale} exceeds the fixed-point resolution")));
    }
    let unit = (1u128 << FRACTION_BITS) / scale;
    let to_neglog = |q: u128| -> Result<NegLog> {
        let units = q * unit;
        if units >= u64::MAX as u128 {
            return Err(Error::Overflow("probability below fixed-point range".into()));
        }
        Ok(NegLog::from_units(units as u64))
    };
    let (mut xr, mut yr) = (Vec::with_capacity(n + 1), Vec::with_capacity(n + 1));
    let mut t_sum = 0u128;
    for (i, class) in inst.classes().iter().enumerate() {
        let t = (scale as f64 * (class.len() as f64).log2()).ceil() as u128;
        t_sum += t;
        let mut xrow = Vec::with_capacity(class.len() + 1);
        let mut yrow = Vec::with_capacity(class.len() + 1);
        for (j, item) in class.items.iter().enumerate() {
            xrow.push((j as Letter, to_neglog(t + (item.v - v_min[i]) as u128)?));
            yrow.push((j as Letter, to_neglog(t + (item.w - w_min[i]) as u128)?));
        }
        if normalize {
            complete(&mut xrow, lambda as Letter)?;
            complete(&mut yrow, lambda as Letter + 1)?;
        }
        xr.push(xrow);
        yr.push(yrow);
    }
    let zx = (v_cap as u128 + t_sum) * unit;
    let zy = (w_cap as u128 + t_sum) * unit;
    if zx.max(zy) >= u64::MAX as u128 {
        return Err(Error::Overflow("threshold below fixed-point range".into()));
    }
    let (zx, zy) = (zx as u64, zy as u64);
    xr.push(vec![(0, NegLog::from_units(zy.saturating_sub(zx)))]);
    yr.push(vec![(0, NegLog::from_units(zx.saturating_sub(zy)))]);
    if normalize {
        complete(xr.last_mut().unwrap(), lambda as Letter)?;
        complete(yr.last_mut().unwrap(), lambda as Letter + 1)?;
    }
    let x = WeightedSequence::from_rows(alphabet.clone(), xr)?;
    let y = WeightedSequence::from_rows(alphabet, yr)?;
    WcInstance::new(x, y, ProbThreshold::from_neglog(NegLog::from_units(zx.max(zy))))
}

/// Adds `filler` with the probability the row is missing, if any.
fn complete(row: &mut Vec<(Letter, NegLog)>, filler: Letter) -> Result<()> {
    let rest = 1.0 - row.iter().map(|&(_, p)| p.probability()).sum::<f64>();
    if rest > 0.0 {
        row.push((filler, NegLog::from_probability(rest.min(1.0))?));
    }
    Ok(())
}

/// A window where pattern and text admit a consensus: the 0-based window
/// offsets where their heavy letters differ, the consensus letters there,
/// and the heavy probabilities of both sides outside those offsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GwpmWitness {
    pub position: usize,
    pub mismatches: Vec<usize>,
    pub letters: Vec<Letter>,
    pub alpha: NegLog,
    pub beta: NegLog,
}

#[derive(Debug, Clone)]
pub struct GwpmResult {
    /// Sorted 1-based positions.
    pub occurrences: Vec<usize>,
    /// One record per occurrence, in the same order.
    pub witnesses: Vec<GwpmWitness>,
    heavy_text: Vec<u32>,
    m: usize,
}

/// Pattern and text pruned by `z` with the cross lcp index of their heavy
/// strings.
pub struct GwpmMatcher {
    p: WeightedSequence,
    t: WeightedSequence,
    z: ProbThreshold,
    heavy_text: Vec<u32>,
    index: Option<CrossIndex>,
}

impl GwpmMatcher {
    pub fn new(p: &WeightedSequence, t: &WeightedSequence, z: &ProbThreshold) -> Result<Self> {
        if p.alphabet() != t.alphabet() {
            return domain("pattern and text use different alphabets");
        }
        let (p, t) = (p.prune(z), t.prune(z));
        let heavy_text = t.heavy_codes();
        let index = match p.heavy_string() {
            Ok(hp) if !p.is_empty() && p.len() <= t.len() => Some(CrossIndex::from_codes(&hp, &heavy_text)?),
            _ => None,
        };
        Ok(GwpmMatcher { p, t, z: *z, heavy_text, index })
    }

    pub fn windows(&self) -> usize {
        match self.index {
            Some(_) => self.t.len() + 1 - self.p.len(),
            None => 0,
        }
    }

    /// Occurrences in the 1-based window range (all windows by default).
    pub fn scan(&self, windows: Option<Range<usize>>, algo: Algo) -> Result<Vec<GwpmWitness>> {
        let mut out = Vec::new();
        let Some(index) = &self.index else { return Ok(out) };
        let m = self.p.len();
        let range = windows.unwrap_or(1..self.windows() + 1);
        if range.is_empty() {
            return Ok(out);
        }
        let limit = 2 * self.z.floor_log2() as usize;
        let heavy = |x: &WeightedSequence, k: usize| x.heavy(k).map(|(_, p)| p.units());
        let beta: u64 = (0..m).map(|k| heavy(&self.p, k).expect("pattern rows nonempty")).sum();
        let (mut alpha, mut empty) = (0u64, 0usize);
        for k in range.start - 1..range.start - 1 + m {
            match heavy(&self.t, k) {
                Some(p) => alpha += p,
                None => empty += 1,
            }
        }
        let mut d = Vec::with_capacity(limit + 1);
        for pos in range.clone() {
            let start = pos - 1;
            if empty == 0 {
                d.clear();
                let mut i = 0;
                while i < m && d.len() <= limit {
                    i += index.cross_lcp0(i, start + i);
                    if i < m {
                        d.push(i);
                        i += 1;
                    }
                }
                if d.len() <= limit {
                    if let Some(w) = self.window(pos, &d, alpha, beta, algo)? {
                        out.push(w);
                    }
                }
            }
            if pos + 1 < range.end {
                match heavy(&self.t, start + m) {
                    Some(q) => alpha += q,
                    None => empty += 1,
                }
                match heavy(&self.t, start) {
                    Some(q) => alpha -= q,
                    None => empty -= 1,
                }
            }
        }
        Ok(out)
    }

    fn window(&self, pos: usize, d: &[usize], alpha: u64, beta: u64, algo: Algo) -> Result<Option<GwpmWitness>> {
        let start = pos - 1;
        let heavy = |x: &WeightedSequence, k: usize| x.heavy(k).expect("rows nonempty").1.units();
        let alpha_out = alpha - d.iter().map(|&k| heavy(&self.t, start + k)).sum::<u64>();
        let beta_out = beta - d.iter().map(|&k| heavy(&self.p, k)).sum::<u64>();
        let (alpha_out, beta_out) = (NegLog::from_units(alpha_out), NegLog::from_units(beta_out));
        let witness =
            |letters| GwpmWitness { position: pos, mismatches: d.to_vec(), letters, alpha: alpha_out, beta: beta_out };
        if d.is_empty() {
            let ok = self.z.admits(alpha_out) && self.z.admits(beta_out);
            return Ok(ok.then(|| witness(Vec::new())));
        }
        let x = self.t.select(d.iter().map(|&k| start + k)).scale_row(0, alpha_out);
        let y = self.p.select(d.iter().copied()).scale_row(0, beta_out);
        let found = match algo {
            Algo::Auto | Algo::Sdwc => match SdwcInstance::new(x.clone(), y.clone(), self.z) {
                Ok(inst) => sdwc::solve(&inst),
                Err(_) => weighted_consensus(&x, &y, &self.z, Algo::Mim)?,
            },
            other => weighted_consensus(&x, &y, &self.z, other)?,
        };
        Ok(found.map(witness))
    }

    /// Packages witnesses from [`GwpmMatcher::scan`] calls, sorted by position.
    pub fn finish(&self, mut witnesses: Vec<GwpmWitness>) -> GwpmResult {
        witnesses.sort_by_key(|w| w.position);
        GwpmResult {
            occurrences: witnesses.iter().map(|w| w.position).collect(),
            witnesses,
            heavy_text: self.heavy_text.clone(),
            m: self.p.len(),
        }
    }
}

/// Windows of `t` admitting a consensus with `p`, 1-based, with witnesses.
pub fn gwpm(p: &WeightedSequence, t: &WeightedSequence, z: &ProbThreshold, algo: Algo) -> Result<GwpmResult> {
    let matcher = GwpmMatcher::new(p, t, z)?;
    let found = matcher.scan(None, algo)?;
    Ok(matcher.finish(found))
}

/// The consensus string of the occurrence at `position`.
pub fn gwpm_witness(result: &GwpmResult, position: usize) -> Result<Vec<Letter>> {
    let Ok(k) = result.occurrences.binary_search(&position) else {
        return domain(format!("{position} is not an occurrence"));
    };
    let w = &result.witnesses[k];
    let mut s = result.heavy_text[position - 1..position - 1 + result.m].to_vec();
    for (&d, &c) in w.mismatches.iter().zip(&w.letters) {
        s[d] = c;
    }
    Ok(s)
}
