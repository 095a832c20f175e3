//! Scoring matrices (profiles) and lookahead-scoring profile matching.

use std::ops::Range;

use crate::alphabet::{Alphabet, Letter};
use crate::capacity;
use crate::error::{domain, Error, Result};
use crate::lcp::{CrossIndex, Text};
use crate::scalar::Scalar;

/// An `m × σ` integer score table.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoringMatrix<T> {
    alphabet: Alphabet,
    /// Row-major, `m` rows of `σ` entries.
    scores: Vec<T>,
}

/// A match needs a score of at least `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct ScoreThreshold<T>(pub T);

impl<T: Scalar> ScoreThreshold<T> {
    /// A threshold below every window sum.
    pub fn minus_infinity() -> Self {
        ScoreThreshold(T::min_value())
    }
}

impl<T: Scalar> ScoringMatrix<T> {
    /// Builds a matrix from rows given in alphabet column order.
    ///
    /// Rejects empty matrices, ragged rows, and matrices whose extreme
    /// window sums would overflow `T`.
    pub fn new(alphabet: Alphabet, rows: Vec<Vec<T>>) -> Result<Self> {
        if rows.is_empty() {
            return domain("profile must have at least one row");
        }
        let sigma = alphabet.len();
        let mut scores = Vec::with_capacity(rows.len() * sigma);
        let mut total: i128 = 0;
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != sigma {
                return domain(format!("row {} has {} entries, expected {sigma}", i + 1, row.len()));
            }
            total += row.iter().map(|x| x.widen().abs()).max().unwrap_or(0);
            scores.extend(row);
        }
        // Any partial sum, and a partial sum minus one entry, stays in range.
        if T::narrow(2 * total).is_none() {
            return Err(Error::Overflow("window sums do not fit the score type".into()));
        }
        Ok(ScoringMatrix { alphabet, scores })
    }

    pub fn len(&self) -> usize {
        self.scores.len() / self.alphabet.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Entry for 0-based row `i` and letter `s`.
    #[inline]
    pub fn get(&self, i: usize, s: Letter) -> T {
        self.scores[i * self.alphabet.len() + s as usize]
    }

    pub fn row(&self, i: usize) -> &[T] {
        let sigma = self.alphabet.len();
        &self.scores[i * sigma..(i + 1) * sigma]
    }

    /// Sum of entries selected by `s`.
    pub fn score(&self, s: &[Letter]) -> Result<T> {
        if s.len() != self.len() {
            return domain(format!("string of length {} scored against profile of length {}", s.len(), self.len()));
        }
        let mut sum = T::zero();
        for (i, &c) in s.iter().enumerate() {
            if c as usize >= self.alphabet.len() {
                return domain(format!("letter {c} outside alphabet"));
            }
            sum = sum + self.get(i, c);
        }
        Ok(sum)
    }

    /// Per-row argmax, ties to the smallest letter.
    pub fn heavy_string(&self) -> Vec<Letter> {
        (0..self.len())
            .map(|i| {
                let row = self.row(i);
                let mut best = 0;
                for (s, &x) in row.iter().enumerate().skip(1) {
                    if x > row[best] {
                        best = s;
                    }
                }
                best as Letter
            })
            .collect()
    }

    /// Score of the heavy string, the maximum over all strings.
    pub fn max_score(&self) -> T {
        (0..self.len()).map(|i| *self.row(i).iter().max().expect("nonempty row")).fold(T::zero(), |a, b| a + b)
    }

    pub fn min_score(&self) -> T {
        (0..self.len()).map(|i| *self.row(i).iter().min().expect("nonempty row")).fold(T::zero(), |a, b| a + b)
    }
}

/// Score of `s` against `p`.
pub fn score<T: Scalar>(s: &[Letter], p: &ScoringMatrix<T>) -> Result<T> {
    p.score(s)
}

/// Number of strings with score at least `z`.
///
/// Exhaustive with pruning, so it is guarded by `σ^m ≤ 2^24`.
pub fn count_matching_strings<T: Scalar>(p: &ScoringMatrix<T>, z: ScoreThreshold<T>) -> Result<u128> {
    let sigma = p.alphabet().len() as u128;
    let m = p.len();
    let total = (0..m).try_fold(1u128, |acc, _| acc.checked_mul(sigma)).unwrap_or(u128::MAX);
    capacity::check("strings of the profile length", total, 1 << 24)?;

    // Suffix extremes for pruning.
    let mut best = vec![T::zero(); m + 1];
    let mut worst = vec![T::zero(); m + 1];
    for i in (0..m).rev() {
        best[i] = best[i + 1] + *p.row(i).iter().max().unwrap();
        worst[i] = worst[i + 1] + *p.row(i).iter().min().unwrap();
    }
    let pow = |k: usize| sigma.pow(k as u32);

    fn go<T: Scalar>(
        p: &ScoringMatrix<T>,
        i: usize,
        acc: T,
        z: T,
        best: &[T],
        worst: &[T],
        pow: &dyn Fn(usize) -> u128,
    ) -> u128 {
        let m = p.len();
        if acc + best[i] < z {
            return 0;
        }
        if acc + worst[i] >= z {
            return pow(m - i);
        }
        p.row(i).iter().map(|&x| go(p, i + 1, acc + x, z, best, worst, pow)).sum()
    }
    Ok(go(p, 0, T::zero(), z.0, &best, &worst, &pow))
}

/// Occurrences of `p` in `t` with threshold `z`, as sorted 1-based positions.
pub fn profile_match<T: Scalar>(p: &ScoringMatrix<T>, t: &Text, z: ScoreThreshold<T>) -> Result<Vec<usize>> {
    Ok(ProfileMatcher::new(p, t)?.scan(z, None).occurrences)
}

/// Result of a scan with walk statistics.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScanReport {
    pub occurrences: Vec<usize>,
    /// Largest number of mismatch-walk iterations spent on one window.
    pub max_walk: usize,
}

/// Preprocessed profile/text pair: heavy string of the profile and the
/// cross lcp index of `H(P) · # · T`.
pub struct ProfileMatcher<'a, T> {
    profile: &'a ScoringMatrix<T>,
    text: &'a [Letter],
    heavy: Vec<Letter>,
    heavy_score: T,
    index: Option<CrossIndex>,
}

impl<'a, T: Scalar> ProfileMatcher<'a, T> {
    pub fn new(profile: &'a ScoringMatrix<T>, text: &'a Text) -> Result<Self> {
        if profile.alphabet() != text.alphabet() {
            return domain("profile and text use different alphabets");
        }
        let heavy = profile.heavy_string();
        let heavy_score = profile.max_score();
        let index =
            if profile.len() <= text.len() { Some(CrossIndex::from_codes(&heavy, text.letters())?) } else { None };
        Ok(ProfileMatcher { profile, text: text.letters(), heavy, heavy_score, index })
    }

    /// Number of windows, `n - m + 1` (zero when the profile is longer).
    pub fn windows(&self) -> usize {
        (self.text.len() + 1).saturating_sub(self.profile.len())
    }

    /// Scans all windows, or the 1-based window range given.
    pub fn scan(&self, z: ScoreThreshold<T>, windows: Option<Range<usize>>) -> ScanReport {
        let mut report = ScanReport::default();
        let Some(index) = &self.index else {
            return report;
        };
        let m = self.profile.len();
        let range = windows.unwrap_or(1..self.windows() + 1);
        for p in range {
            let mut s = self.heavy_score;
            // 0-based cursor into H(P) and T.
            let (mut i, mut j) = (0usize, p - 1);
            let mut steps = 0;
            while s >= z.0 && i < m {
                steps += 1;
                let delta = index.cross_lcp0(i, j);
                i += delta + 1;
                j += delta + 1;
                if i <= m {
                    let row = i - 1;
                    s = s + self.profile.get(row, self.text[j - 1]) - self.profile.get(row, self.heavy[row]);
                }
            }
            report.max_walk = report.max_walk.max(steps);
            if s >= z.0 {
                report.occurrences.push(p);
            }
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::parse("ab").unwrap()
    }

    fn example() -> ScoringMatrix<i64> {
        ScoringMatrix::new(ab(), vec![vec![3, 0], vec![2, 5]]).unwrap()
    }

    fn text(s: &str) -> Text {
        Text::parse(s, ab()).unwrap()
    }

    #[test]
    fn score_examples() {
        let p = example();
        assert_eq!(p.score(&[0, 1]).unwrap(), 8);
        assert_eq!(p.score(&[1, 0]).unwrap(), 2);
        let zero = ScoringMatrix::<i64>::new(ab(), vec![vec![0, 0]; 3]).unwrap();
        assert_eq!(zero.score(&[1, 0, 1]).unwrap(), 0);
        assert!(p.score(&[0]).is_err());
        assert!(p.score(&[0, 2]).is_err());
    }

    #[test]
    fn heavy_string_examples() {
        assert_eq!(example().heavy_string(), vec![0, 1]);
        let tie = ScoringMatrix::<i64>::new(ab(), vec![vec![1, 1]]).unwrap();
        assert_eq!(tie.heavy_string(), vec![0]);
        let neg = ScoringMatrix::<i64>::new(ab(), vec![vec![-1, -2]]).unwrap();
        assert_eq!(neg.heavy_string(), vec![0]);
    }

    #[test]
    fn match_examples() {
        let p = example();
        assert_eq!(profile_match(&p, &text("abba"), ScoreThreshold(7)).unwrap(), vec![1]);
        assert_eq!(profile_match(&p, &text("abba"), ScoreThreshold::minus_infinity()).unwrap(), vec![1, 2, 3]);
        assert_eq!(profile_match(&p, &text("abba"), ScoreThreshold(9)).unwrap(), Vec::<usize>::new());
        assert!(profile_match(&p, &text("a"), ScoreThreshold(0)).unwrap().is_empty());
    }

    #[test]
    fn count_examples() {
        let p = example();
        assert_eq!(count_matching_strings(&p, ScoreThreshold(7)).unwrap(), 1);
        assert_eq!(count_matching_strings(&p, ScoreThreshold(p.min_score())).unwrap(), 4);
        assert_eq!(count_matching_strings(&p, ScoreThreshold(p.max_score() + 1)).unwrap(), 0);
    }

    #[test]
    fn count_guard() {
        let big = ScoringMatrix::<i64>::new(Alphabet::parse("acgt").unwrap(), vec![vec![0; 4]; 13]).unwrap();
        assert!(matches!(count_matching_strings(&big, ScoreThreshold(0)), Err(Error::Capacity { .. })));
    }

    #[test]
    fn overflowing_matrix_rejected() {
        let r = ScoringMatrix::<i32>::new(ab(), vec![vec![i32::MAX / 2, 0], vec![i32::MAX / 2, 0]]);
        assert!(matches!(r, Err(Error::Overflow(_))));
    }

    #[test]
    fn generic_over_scalar_width() {
        let p32 = ScoringMatrix::<i32>::new(ab(), vec![vec![3, 0], vec![2, 5]]).unwrap();
        let p128 = ScoringMatrix::<i128>::new(ab(), vec![vec![3, 0], vec![2, 5]]).unwrap();
        assert_eq!(profile_match(&p32, &text("abba"), ScoreThreshold(7)).unwrap(), vec![1]);
        assert_eq!(profile_match(&p128, &text("abba"), ScoreThreshold(7)).unwrap(), vec![1]);
    }
}
