use super::light::{merge_by, prefixes_in, suffixes_in, SolidFactorRep};
use super::{SdwcInstance, Side};
use crate::neglog::NegLog;
use crate::weighted::WeightedSequence;

/// Dyadic interval `[a, b]` over `1..=n+1` at layer `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasicInterval {
    pub a: usize,
    pub b: usize,
    pub layer: u32,
}

/// Smallest layer holding a single interval covering `[1, n+1]`.
pub(crate) fn top_layer(n: usize) -> u32 {
    (n + 1).next_power_of_two().trailing_zeros()
}

/// All distinct basic intervals for length `n`, by layer then position.
/// An interval appearing on several layers is listed at its lowest one.
pub fn basic_intervals(n: usize) -> Vec<BasicInterval> {
    let end = n + 1;
    let mut out: Vec<BasicInterval> = Vec::new();
    for layer in 0..=top_layer(n) {
        let width = 1usize << layer;
        for a in (1..=end).step_by(width) {
            let b = end.min(a + width - 1);
            if !out.iter().any(|x| x.a == a && x.b == b) {
                out.push(BasicInterval { a, b, layer });
            }
        }
    }
    out
}

/// The lists `L_1..L_{n+1}` and `R_1..R_{n+1}` for one `(U, V)` choice,
/// stored at index `i - 1`.
pub struct EndLists {
    pub l: Vec<Vec<SolidFactorRep>>,
    pub r: Vec<Vec<SolidFactorRep>>,
}

fn pick(inst: &SdwcInstance, side: Side) -> (&WeightedSequence, &WeightedSequence) {
    match side {
        Side::X => (&inst.x, &inst.y),
        Side::Y => (&inst.y, &inst.x),
    }
}

fn canonical(list: Vec<SolidFactorRep>, side: Side) -> Vec<SolidFactorRep> {
    match side {
        Side::X => list,
        Side::Y => list.into_iter().map(SolidFactorRep::swapped).collect(),
    }
}

/// Builds `L_i` from light `1/z_ℓ` prefixes of `U` and `R_i` from light
/// `1/z_r` suffixes of `V`.
pub fn build_l_r(inst: &SdwcInstance, u: Side, v: Side) -> EndLists {
    let (z_left, z_right) = inst.split_thresholds();
    build_with(inst, u, v, z_left, z_right)
}

pub(crate) fn build_with(inst: &SdwcInstance, u: Side, v: Side, z_left: NegLog, z_right: NegLog) -> EndLists {
    let n = inst.len();
    let z = inst.z.neglog();
    let (uu, uw) = pick(inst, u);
    let light = prefixes_in(uu, uw, z, z_left);
    let mut l = Vec::with_capacity(n + 1);
    for i in 1..=n {
        let pos = i - 1;
        let lists = uu
            .row(pos)
            .iter()
            .map(|&(s, ps)| {
                let pw = uw.prob(pos, s);
                let mut ext = Vec::new();
                for base in &light[i - 1] {
                    let p1 = base.p1 + ps;
                    if p1 > z {
                        break;
                    }
                    let p2 = base.p2 + pw;
                    if p2 <= z {
                        let mut letters = base.letters.clone();
                        letters.push(s);
                        ext.push(SolidFactorRep { letters, p1, p2 });
                    }
                }
                ext
            })
            .collect();
        l.push(canonical(merge_by(lists, |r| r.p1), u));
    }
    l.push(Vec::new());

    let (vv, vw) = pick(inst, v);
    let mut suffixes = suffixes_in(vv, vw, z, z_right);
    let r = (1..=n + 1).map(|i| canonical(std::mem::take(&mut suffixes[n + 1 - i]), v)).collect();
    EndLists { l, r }
}

/// `L*` and `R*` lists of every basic interval; `layers[j][t]` belongs to
/// the interval starting at `t·2^j + 1`.
pub struct StarLists {
    pub layers: Vec<Vec<(Vec<SolidFactorRep>, Vec<SolidFactorRep>)>>,
}

impl StarLists {
    pub fn get(&self, a: usize, layer: u32) -> &(Vec<SolidFactorRep>, Vec<SolidFactorRep>) {
        &self.layers[layer as usize][(a - 1) >> layer]
    }

    /// Total number of elements on a layer.
    pub fn layer_size(&self, layer: u32) -> usize {
        self.layers[layer as usize].iter().map(|(l, r)| l.len() + r.len()).sum()
    }
}

/// Appends `V`'s heavy letters at 0-based `positions` to each element,
/// dropping those that stop being common `1/z`-solid.
fn extend_heavy(
    list: &[SolidFactorRep],
    heavy: &[(u32, NegLog, NegLog)],
    z: NegLog,
    front: bool,
) -> Vec<SolidFactorRep> {
    let (hx, hy) = heavy.iter().fold((NegLog::ONE, NegLog::ONE), |(a, b), &(_, px, py)| (a + px, b + py));
    list.iter()
        .filter_map(|rep| {
            let (p1, p2) = (rep.p1 + hx, rep.p2 + hy);
            if p1 > z || p2 > z {
                return None;
            }
            let mut letters = Vec::with_capacity(rep.len() + heavy.len());
            if front {
                letters.extend(heavy.iter().map(|h| h.0));
                letters.extend_from_slice(&rep.letters);
            } else {
                letters.extend_from_slice(&rep.letters);
                letters.extend(heavy.iter().map(|h| h.0));
            }
            Some(SolidFactorRep { letters, p1, p2 })
        })
        .collect()
}

pub fn star_lists(inst: &SdwcInstance, u: Side, v: Side, ends: EndLists) -> StarLists {
    let n = inst.len();
    let z = inst.z.neglog();
    let (vv, _) = pick(inst, v);
    // V's heavy letter at each position with its probabilities in X and Y.
    let heavy: Vec<(u32, NegLog, NegLog)> = (0..n)
        .map(|i| {
            let (c, _) = vv.heavy(i).expect("rows are nonempty");
            (c, inst.x.prob(i, c), inst.y.prob(i, c))
        })
        .collect();
    let mut layers = vec![ends.l.into_iter().zip(ends.r).collect::<Vec<_>>()];
    for layer in 1..=top_layer(n) {
        let half = 1usize << (layer - 1);
        let below = &layers[layer as usize - 1];
        let mut cur = Vec::new();
        for a in (1..=n + 1).step_by(2 * half) {
            let b = (n + 1).min(a + 2 * half - 1);
            let c = a + half - 1;
            let (left_l, left_r) = &below[(a - 1) >> (layer - 1)];
            if c >= b {
                cur.push((left_l.clone(), left_r.clone()));
                continue;
            }
            let (right_l, right_r) = &below[c >> (layer - 1)];
            let l = if b <= n {
                let ext = extend_heavy(left_l, &heavy[c..b], z, false);
                merge_by(vec![ext, right_l.clone()], |r| u.key(r))
            } else {
                Vec::new()
            };
            let ext = extend_heavy(right_r, &heavy[a - 1..c], z, true);
            let r = merge_by(vec![left_r.clone(), ext], |r| v.key(r));
            cur.push((l, r));
        }
        layers.push(cur);
    }
    StarLists { layers }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seven_has_fifteen_intervals() {
        let got: Vec<_> = basic_intervals(7).iter().map(|x| (x.a, x.b)).collect();
        let want = vec![
            (1, 1),
            (2, 2),
            (3, 3),
            (4, 4),
            (5, 5),
            (6, 6),
            (7, 7),
            (8, 8),
            (1, 2),
            (3, 4),
            (5, 6),
            (7, 8),
            (1, 4),
            (5, 8),
            (1, 8),
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn ragged_intervals() {
        let got: Vec<_> = basic_intervals(4).iter().map(|x| (x.a, x.b, x.layer)).collect();
        assert_eq!(
            got,
            vec![(1, 1, 0), (2, 2, 0), (3, 3, 0), (4, 4, 0), (5, 5, 0), (1, 2, 1), (3, 4, 1), (1, 4, 2), (1, 5, 3)]
        );
        assert_eq!(basic_intervals(0).len(), 1);
        for n in 0..40 {
            for x in basic_intervals(n) {
                assert_eq!((x.a - 1) % (1 << x.layer), 0);
                assert_eq!(x.b, (n + 1).min(x.a + (1 << x.layer) - 1));
            }
        }
    }
}
