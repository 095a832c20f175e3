use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::alphabet::Letter;
use crate::error::{domain, Result};
use crate::neglog::{NegLog, ProbThreshold};
use crate::weighted::WeightedSequence;

/// A factor common to both sequences, with its probability in `X` (`p1`)
/// and in `Y` (`p2`) over the factor's own positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolidFactorRep {
    pub letters: Vec<Letter>,
    pub p1: NegLog,
    pub p2: NegLog,
}

impl SolidFactorRep {
    pub fn empty() -> Self {
        SolidFactorRep { letters: Vec::new(), p1: NegLog::ONE, p2: NegLog::ONE }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub(crate) fn swapped(mut self) -> Self {
        std::mem::swap(&mut self.p1, &mut self.p2);
        self
    }
}

/// Merges lists sorted by `key` into one sorted list; ties keep list order.
pub(crate) fn merge_by(
    lists: Vec<Vec<SolidFactorRep>>,
    key: impl Fn(&SolidFactorRep) -> NegLog,
) -> Vec<SolidFactorRep> {
    let total = lists.iter().map(Vec::len).sum();
    let mut iters: Vec<_> = lists.into_iter().map(|l| l.into_iter().peekable()).collect();
    let mut heap = BinaryHeap::new();
    for (t, it) in iters.iter_mut().enumerate() {
        if let Some(x) = it.peek() {
            heap.push(Reverse((key(x), t)));
        }
    }
    let mut out = Vec::with_capacity(total);
    while let Some(Reverse((_, t))) = heap.pop() {
        out.push(iters[t].next().expect("peeked"));
        if let Some(x) = iters[t].peek() {
            heap.push(Reverse((key(x), t)));
        }
    }
    out
}

/// Lists `B_0..B_n`: common `1/z`-solid prefixes of `x` and `y` of each
/// length that are light `1/z′`-solid prefixes of `x`, sorted by `p1`.
pub fn light_prefixes(
    x: &WeightedSequence,
    y: &WeightedSequence,
    z: &ProbThreshold,
    z_prime: &ProbThreshold,
) -> Result<Vec<Vec<SolidFactorRep>>> {
    check(x, y, z, z_prime)?;
    Ok(prefixes_in(x, y, z.neglog(), z_prime.neglog()))
}

/// Mirror of [`light_prefixes`]: entry `k` holds the suffixes of length `k`
/// that are light `1/z′`-solid suffixes of `x`, sorted by `p1`.
pub fn light_suffixes(
    x: &WeightedSequence,
    y: &WeightedSequence,
    z: &ProbThreshold,
    z_prime: &ProbThreshold,
) -> Result<Vec<Vec<SolidFactorRep>>> {
    check(x, y, z, z_prime)?;
    Ok(suffixes_in(x, y, z.neglog(), z_prime.neglog()))
}

fn check(x: &WeightedSequence, y: &WeightedSequence, z: &ProbThreshold, z_prime: &ProbThreshold) -> Result<()> {
    if x.len() != y.len() {
        return domain(format!("sequences of lengths {} and {}", x.len(), y.len()));
    }
    if z_prime.neglog() > z.neglog() {
        return domain("light threshold exceeds the solidity threshold");
    }
    Ok(())
}

/// Prefix lists with lightness measured in `u`; `p1` is the probability in
/// `u` and `p2` the one in `w`.
pub(crate) fn prefixes_in(
    u: &WeightedSequence,
    w: &WeightedSequence,
    z: NegLog,
    z_light: NegLog,
) -> Vec<Vec<SolidFactorRep>> {
    let n = u.len();
    let mut b: Vec<Vec<SolidFactorRep>> = Vec::with_capacity(n + 1);
    b.push(vec![SolidFactorRep::empty()]);
    for k in 1..=n {
        let pos = k - 1;
        let row = u.row(pos);
        let mut lists = Vec::new();
        // Heavy run of u between the shorter prefix and the new letter.
        let mut run: Vec<Letter> = Vec::new();
        let (mut hu, mut hw) = (NegLog::ONE, NegLog::ONE);
        for i in (0..k).rev() {
            if i < k - 1 {
                let Some((c, pc)) = u.heavy(i) else { break };
                hu = hu + pc;
                hw = hw + w.prob(i, c);
                run.push(c);
            }
            if hu > z_light {
                break;
            }
            let mut per_letter = vec![Vec::new(); row.len().saturating_sub(1)];
            for base in &b[i] {
                let pu = base.p1 + hu;
                if row.len() < 2 || pu + row[1].1 > z_light {
                    break;
                }
                for (t, &(s, ps)) in row.iter().enumerate().skip(1) {
                    let p1 = pu + ps;
                    if p1 > z_light {
                        break;
                    }
                    let p2 = base.p2 + hw + w.prob(pos, s);
                    if p2 <= z {
                        let mut letters = Vec::with_capacity(k);
                        letters.extend_from_slice(&base.letters);
                        letters.extend(run.iter().rev());
                        letters.push(s);
                        per_letter[t - 1].push(SolidFactorRep { letters, p1, p2 });
                    }
                }
            }
            lists.extend(per_letter.into_iter().filter(|l| !l.is_empty()));
        }
        b.push(merge_by(lists, |r| r.p1));
    }
    b
}

pub(crate) fn suffixes_in(
    u: &WeightedSequence,
    w: &WeightedSequence,
    z: NegLog,
    z_light: NegLog,
) -> Vec<Vec<SolidFactorRep>> {
    let mut lists = prefixes_in(&u.reversed(), &w.reversed(), z, z_light);
    for list in &mut lists {
        for rep in list {
            rep.letters.reverse();
        }
    }
    lists
}
