//! Weighted sequences (position weight matrices) and weighted pattern
//! matching.
//!
//! Every position holds the letters of nonzero probability as `(letter,
//! NegLog)` pairs sorted by decreasing probability, ties broken by letter
//! index, so the first entry of a row is its heavy letter.

use std::collections::HashMap;
use std::ops::Range;

use crate::alphabet::{Alphabet, Letter};
use crate::capacity;
use crate::error::{domain, Error, Result};
use crate::lcp::{CrossIndex, Text};
use crate::neglog::{NegLog, ProbThreshold};

/// Rows wider than this get hashed lookups; narrower rows are scanned.
const HASHED_ROW_WIDTH: usize = 8;

/// Allowed excess of a row's probability sum over one.
pub const ROW_SUM_SLACK: f64 = 1e-6;

/// Code used for empty rows in heavy strings; never equal to a letter.
pub(crate) const EMPTY_ROW: u32 = u32::MAX - 1;

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSequence {
    alphabet: Alphabet,
    offsets: Vec<usize>,
    entries: Vec<(Letter, NegLog)>,
    wide: HashMap<(usize, Letter), NegLog>,
}

impl WeightedSequence {
    /// Builds a sequence from sparse rows. Zero-probability entries are
    /// dropped; duplicate or foreign letters and rows summing above one are
    /// rejected.
    pub fn from_rows(alphabet: Alphabet, rows: Vec<Vec<(Letter, NegLog)>>) -> Result<Self> {
        let mut offsets = Vec::with_capacity(rows.len() + 1);
        let mut entries = Vec::with_capacity(rows.iter().map(Vec::len).sum());
        let mut wide = HashMap::new();
        offsets.push(0);
        for (i, mut row) in rows.into_iter().enumerate() {
            row.retain(|&(_, p)| p != NegLog::INF);
            row.sort_unstable_by_key(|&(s, p)| (p, s));
            let mut seen = row.iter().map(|&(s, _)| s).collect::<Vec<_>>();
            seen.sort_unstable();
            if seen.windows(2).any(|w| w[0] == w[1]) {
                return domain(format!("position {} lists a letter twice", i + 1));
            }
            if let Some(&bad) = seen.last().filter(|&&s| s as usize >= alphabet.len()) {
                return domain(format!("letter {bad} outside alphabet at position {}", i + 1));
            }
            let sum: f64 = row.iter().map(|&(_, p)| p.probability()).sum();
            if sum > 1.0 + ROW_SUM_SLACK {
                return domain(format!("probabilities at position {} sum to {sum}", i + 1));
            }
            if row.len() > HASHED_ROW_WIDTH {
                wide.extend(row.iter().map(|&(s, p)| ((i, s), p)));
            }
            entries.extend(row);
            offsets.push(entries.len());
        }
        Ok(WeightedSequence { alphabet, offsets, entries, wide })
    }

    /// Builds a sequence from dense decimal rows in alphabet column order.
    pub fn from_probabilities(alphabet: Alphabet, rows: &[Vec<f64>]) -> Result<Self> {
        let sigma = alphabet.len();
        let mut sparse = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            if row.len() != sigma {
                return domain(format!("position {} has {} entries, expected {sigma}", i + 1, row.len()));
            }
            let sum: f64 = row.iter().sum();
            if sum > 1.0 + ROW_SUM_SLACK {
                return domain(format!("probabilities at position {} sum to {sum}", i + 1));
            }
            let mut out = Vec::new();
            for (s, &p) in row.iter().enumerate() {
                let nl = NegLog::from_probability(p).map_err(|e| Error::Domain(format!("position {}: {e}", i + 1)))?;
                if nl != NegLog::INF {
                    out.push((s as Letter, nl));
                }
            }
            sparse.push(out);
        }
        WeightedSequence::from_rows(alphabet, sparse)
    }

    /// The sequence that assigns probability one to each letter of `text`.
    pub fn from_solid(text: &Text) -> Self {
        let rows = text.letters().iter().map(|&s| vec![(s, NegLog::ONE)]).collect();
        WeightedSequence::from_rows(text.alphabet().clone(), rows).expect("solid rows are valid")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Letters of 0-based position `i`, most probable first.
    #[inline]
    pub fn row(&self, i: usize) -> &[(Letter, NegLog)] {
        &self.entries[self.offsets[i]..self.offsets[i + 1]]
    }

    /// NegLog of letter `s` at 0-based position `i`; `INF` when absent.
    #[inline]
    pub fn prob(&self, i: usize, s: Letter) -> NegLog {
        let row = self.row(i);
        if row.len() > HASHED_ROW_WIDTH {
            return self.wide.get(&(i, s)).copied().unwrap_or(NegLog::INF);
        }
        row.iter().find(|&&(c, _)| c == s).map_or(NegLog::INF, |&(_, p)| p)
    }

    /// Most probable letter at position `i`, ties to the smallest index.
    #[inline]
    pub fn heavy(&self, i: usize) -> Option<(Letter, NegLog)> {
        self.row(i).first().copied()
    }

    /// Maximum number of letters at one position.
    pub fn lambda(&self) -> usize {
        (0..self.len()).map(|i| self.row(i).len()).max().unwrap_or(0)
    }

    /// Total size of the list representation.
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Per-position heavy letters; fails on an empty row.
    pub fn heavy_string(&self) -> Result<Vec<Letter>> {
        (0..self.len())
            .map(|i| match self.heavy(i) {
                Some((s, _)) => Ok(s),
                None => domain(format!("position {} has no letter", i + 1)),
            })
            .collect()
    }

    /// Heavy letters with [`EMPTY_ROW`] standing in for empty rows.
    pub(crate) fn heavy_codes(&self) -> Vec<u32> {
        (0..self.len()).map(|i| self.heavy(i).map_or(EMPTY_ROW, |(s, _)| s)).collect()
    }

    /// Drops letters less probable than `1/z`. Rows may become empty.
    pub fn prune(&self, z: &ProbThreshold) -> WeightedSequence {
        let rows =
            (0..self.len()).map(|i| self.row(i).iter().copied().filter(|&(_, p)| z.admits(p)).collect()).collect();
        WeightedSequence::from_rows(self.alphabet.clone(), rows).expect("subset of valid rows")
    }

    /// Factor `X[range]` (0-based, half-open).
    pub fn factor(&self, range: Range<usize>) -> WeightedSequence {
        self.select(range)
    }

    /// Sequence made of the given 0-based positions, in order.
    pub fn select(&self, positions: impl IntoIterator<Item = usize>) -> WeightedSequence {
        let rows = positions.into_iter().map(|i| self.row(i).to_vec()).collect();
        WeightedSequence::from_rows(self.alphabet.clone(), rows).expect("rows copied from a valid sequence")
    }

    /// Positions in reverse order.
    pub fn reversed(&self) -> WeightedSequence {
        self.select((0..self.len()).rev())
    }

    /// Multiplies every probability at position `i` by the probability
    /// `factor`; rows then sum to less than one.
    pub fn scale_row(&self, i: usize, factor: NegLog) -> WeightedSequence {
        let rows = (0..self.len())
            .map(|k| {
                let row = self.row(k).iter().copied();
                if k == i {
                    row.map(|(s, p)| (s, p + factor)).collect()
                } else {
                    row.collect()
                }
            })
            .collect();
        WeightedSequence::from_rows(self.alphabet.clone(), rows).expect("scaling keeps rows valid")
    }

    /// Dense probabilities, for serialization.
    pub fn to_probabilities(&self) -> Vec<Vec<f64>> {
        (0..self.len())
            .map(|i| {
                let mut dense = vec![0.0; self.alphabet.len()];
                for &(s, p) in self.row(i) {
                    dense[s as usize] = p.probability();
                }
                dense
            })
            .collect()
    }
}

/// Matching probability of `s` against `x` as a NegLog.
pub fn match_neglog(s: &[Letter], x: &WeightedSequence) -> Result<NegLog> {
    if s.len() != x.len() {
        return domain(format!("string of length {} against weighted sequence of length {}", s.len(), x.len()));
    }
    Ok(s.iter().enumerate().map(|(i, &c)| x.prob(i, c)).sum())
}

/// Whether `s` matches `x` with probability at least `1/z`.
pub fn matches(s: &[Letter], x: &WeightedSequence, z: &ProbThreshold) -> Result<bool> {
    Ok(z.admits(match_neglog(s, x)?))
}

/// Occurrences of the solid pattern `p` in the weighted text `t`, sorted,
/// 1-based.
pub fn wpm(p: &Text, t: &WeightedSequence, z: &ProbThreshold) -> Result<Vec<usize>> {
    Ok(WpmMatcher::new(p, t)?.scan(z, None).into_iter().map(|(pos, _)| pos).collect())
}

/// Preprocessed pattern/text pair for weighted pattern matching: heavy string
/// of the text and the cross lcp index of `P · # · H(T)`.
pub struct WpmMatcher<'a> {
    pattern: &'a [Letter],
    text: &'a WeightedSequence,
    index: Option<CrossIndex>,
}

impl<'a> WpmMatcher<'a> {
    pub fn new(pattern: &'a Text, text: &'a WeightedSequence) -> Result<Self> {
        if pattern.alphabet() != text.alphabet() {
            return domain("pattern and text use different alphabets");
        }
        let heavy = text.heavy_codes();
        let index = if !pattern.is_empty() && pattern.len() <= text.len() {
            Some(CrossIndex::from_codes(pattern.letters(), &heavy)?)
        } else {
            None
        };
        Ok(WpmMatcher { pattern: pattern.letters(), text, index })
    }

    pub fn windows(&self) -> usize {
        (self.text.len() + 1).saturating_sub(self.pattern.len())
    }

    /// Occurrences in the given 1-based window range (all windows by
    /// default) with their matching probabilities.
    pub fn scan(&self, z: &ProbThreshold, windows: Option<Range<usize>>) -> Vec<(usize, NegLog)> {
        let mut out = Vec::new();
        let Some(index) = &self.index else {
            return out;
        };
        let m = self.pattern.len();
        let range = windows.unwrap_or(1..self.windows() + 1);
        if range.is_empty() {
            return out;
        }
        let heavy_p = |k: usize| self.text.heavy(k).map(|(_, p)| p);
        // alpha: product over the window of heavy probabilities, tracked as
        // a finite sum plus the number of empty rows.
        let (mut alpha, mut empty) = (0u64, 0usize);
        for k in range.start - 1..range.start - 1 + m {
            match heavy_p(k) {
                Some(p) => alpha += p.units(),
                None => empty += 1,
            }
        }
        for p in range.clone() {
            if empty == 0 {
                let mut a = NegLog::from_units(alpha);
                let (mut i, mut j) = (0usize, p - 1);
                while z.admits(a) && i < m {
                    let delta = index.cross_lcp0(i, j);
                    i += delta + 1;
                    j += delta + 1;
                    if i <= m {
                        let heavy = heavy_p(j - 1).expect("row nonempty");
                        a = (a + self.text.prob(j - 1, self.pattern[i - 1])).divide(heavy);
                    }
                }
                if z.admits(a) {
                    out.push((p, a));
                }
            }
            if p < range.end - 1 {
                match heavy_p(p + m - 1) {
                    Some(q) => alpha += q.units(),
                    None => empty += 1,
                }
                match heavy_p(p - 1) {
                    Some(q) => alpha -= q.units(),
                    None => empty -= 1,
                }
            }
        }
        out
    }
}

/// All maximal `1/z`-solid prefixes of `x`, in depth-first letter order.
pub fn maximal_solid_prefixes(x: &WeightedSequence, z: &ProbThreshold) -> Result<Vec<Vec<Letter>>> {
    let limit = capacity::limit_f64(capacity::MAXIMAL_PREFIX_Z_LIMIT);
    if z.z() > limit {
        return Err(Error::Capacity {
            what: "maximal solid prefix enumeration (z)",
            needed: z.z().min(u128::MAX as f64) as u128,
            limit: limit as u128,
        });
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    fn go(x: &WeightedSequence, z: &ProbThreshold, prefix: &mut Vec<Letter>, p: NegLog, out: &mut Vec<Vec<Letter>>) {
        let k = prefix.len();
        let mut extended = false;
        if k < x.len() {
            let mut row: Vec<(Letter, NegLog)> = x.row(k).to_vec();
            row.sort_unstable_by_key(|&(s, _)| s);
            for (s, q) in row {
                if z.admits(p + q) {
                    extended = true;
                    prefix.push(s);
                    go(x, z, prefix, p + q, out);
                    prefix.pop();
                }
            }
        }
        if !extended {
            out.push(prefix.clone());
        }
    }
    go(x, z, &mut prefix, NegLog::ONE, &mut out);
    Ok(out)
}
