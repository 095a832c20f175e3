//! Brute-force oracles written straight from the problem definitions.

use crate::alphabet::Letter;
use crate::capacity;
use crate::error::{domain, Error, Result};
use crate::lcp::Text;
use crate::neglog::{NegLog, ProbThreshold};
use crate::profile::{ScoreThreshold, ScoringMatrix};
use crate::scalar::Scalar;
use crate::weighted::WeightedSequence;

/// Windows of `t` whose score against `p` reaches `z`, 1-based.
pub fn naive_profile_match<T: Scalar>(p: &ScoringMatrix<T>, t: &Text, z: ScoreThreshold<T>) -> Vec<usize> {
    let (m, n) = (p.len(), t.len());
    if m > n {
        return Vec::new();
    }
    (0..=n - m)
        .filter(|&start| {
            let window = &t.letters()[start..start + m];
            let score = window.iter().enumerate().fold(T::zero(), |acc, (i, &c)| acc + p.get(i, c));
            score >= z.0
        })
        .map(|start| start + 1)
        .collect()
}

/// Every window of `t` with its matching probability against `p`, 1-based.
pub fn naive_wpm_scored(p: &Text, t: &WeightedSequence, z: &ProbThreshold) -> Vec<(usize, NegLog)> {
    let (m, n) = (p.len(), t.len());
    if m == 0 || m > n {
        return Vec::new();
    }
    (0..=n - m)
        .map(|start| {
            let prob = p.letters().iter().enumerate().map(|(i, &c)| t.prob(start + i, c)).sum();
            (start + 1, prob)
        })
        .filter(|&(_, prob)| z.admits(prob))
        .collect()
}

pub fn naive_wpm(p: &Text, t: &WeightedSequence, z: &ProbThreshold) -> Vec<usize> {
    naive_wpm_scored(p, t, z).into_iter().map(|(pos, _)| pos).collect()
}

/// All strings matching `x` with probability at least `1/z`, in
/// lexicographic order of letter indices.
pub fn enumerate_solid_strings(x: &WeightedSequence, z: &ProbThreshold) -> Result<Vec<(Vec<Letter>, NegLog)>> {
    let limit = capacity::limit_f64(capacity::SOLID_ENUMERATION_Z_LIMIT);
    if z.z() > limit {
        return Err(Error::Capacity {
            what: "solid string enumeration (z)",
            needed: z.z().min(u128::MAX as f64) as u128,
            limit: limit as u128,
        });
    }
    fn go(
        x: &WeightedSequence,
        z: &ProbThreshold,
        s: &mut Vec<Letter>,
        p: NegLog,
        out: &mut Vec<(Vec<Letter>, NegLog)>,
    ) {
        let i = s.len();
        if i == x.len() {
            out.push((s.clone(), p));
            return;
        }
        let mut row = x.row(i).to_vec();
        row.sort_unstable_by_key(|&(c, _)| c);
        for (c, q) in row {
            if z.admits(p + q) {
                s.push(c);
                go(x, z, s, p + q, out);
                s.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(x, z, &mut Vec::new(), NegLog::ONE, &mut out);
    Ok(out)
}

/// First string, in lexicographic order, matching both `x` and `y`.
pub fn naive_consensus(x: &WeightedSequence, y: &WeightedSequence, z: &ProbThreshold) -> Result<Option<Vec<Letter>>> {
    if x.len() != y.len() {
        return domain(format!("sequences of lengths {} and {}", x.len(), y.len()));
    }
    let solid = enumerate_solid_strings(x, z)?;
    Ok(solid.into_iter().map(|(s, _)| s).find(|s| {
        let py: NegLog = s.iter().enumerate().map(|(i, &c)| y.prob(i, c)).sum();
        z.admits(py)
    }))
}

/// Windows of `t` admitting a consensus with `p`, each with the witness.
pub fn naive_gwpm(p: &WeightedSequence, t: &WeightedSequence, z: &ProbThreshold) -> Result<Vec<(usize, Vec<Letter>)>> {
    let (m, n) = (p.len(), t.len());
    let mut out = Vec::new();
    if m == 0 || m > n {
        return Ok(out);
    }
    for start in 0..=n - m {
        if let Some(s) = naive_consensus(p, &t.factor(start..start + m), z)? {
            out.push((start + 1, s));
        }
    }
    Ok(out)
}
