//! Longest-common-prefix queries in constant time.
//!
//! The index stores the suffix array, its inverse, the LCP table of adjacent
//! suffixes and a sparse table for range minima over that table. Positions in
//! the public API are 1-based.

use crate::alphabet::{Alphabet, Letter};
use crate::error::{domain, Result};

/// A plain string over an alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Text {
    letters: Vec<Letter>,
    alphabet: Alphabet,
}

impl Text {
    pub fn new(letters: Vec<Letter>, alphabet: Alphabet) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l as usize >= alphabet.len()) {
            return domain(format!("letter {bad} outside alphabet of size {}", alphabet.len()));
        }
        Ok(Text { letters, alphabet })
    }

    pub fn parse(s: &str, alphabet: Alphabet) -> Result<Self> {
        let letters = alphabet.encode(s)?;
        Ok(Text { letters, alphabet })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl std::fmt::Display for Text {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.alphabet.decode(&self.letters))
    }
}

/// Suffix array, inverse, LCP table and range-minimum structure over a string
/// of integer codes.
#[derive(Debug, Clone)]
pub struct LcpIndex {
    len: usize,
    suffix_array: Vec<u32>,
    inverse: Vec<u32>,
    lcp: Vec<u32>,
    rmq: SparseTable,
}

/// Builds the index of a text.
pub fn build_index(text: &Text) -> Result<LcpIndex> {
    LcpIndex::from_codes(text.letters())
}

impl LcpIndex {
    /// Builds the index over arbitrary integer codes compared numerically.
    pub fn from_codes(codes: &[u32]) -> Result<Self> {
        if codes.is_empty() {
            return domain("cannot index an empty text");
        }
        if codes.len() >= u32::MAX as usize {
            return domain("text too long");
        }
        let suffix_array = suffix_array(codes);
        let mut inverse = vec![0u32; codes.len()];
        for (rank, &pos) in suffix_array.iter().enumerate() {
            inverse[pos as usize] = rank as u32;
        }
        let lcp = kasai(codes, &suffix_array, &inverse);
        let rmq = SparseTable::new(&lcp);
        Ok(LcpIndex { len: codes.len(), suffix_array, inverse, lcp, rmq })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// 0-based starting positions of suffixes in lexicographic order.
    pub fn suffix_array(&self) -> &[u32] {
        &self.suffix_array
    }

    pub fn inverse_suffix_array(&self) -> &[u32] {
        &self.inverse
    }

    /// `lcp_table()[k]` is the common prefix length of the suffixes at ranks
    /// `k` and `k + 1`.
    pub fn lcp_table(&self) -> &[u32] {
        &self.lcp
    }

    /// Length of the longest common prefix of the suffixes starting at the
    /// 1-based positions `i` and `j`.
    pub fn lcp(&self, i: usize, j: usize) -> Result<usize> {
        if i == 0 || j == 0 || i > self.len || j > self.len {
            return domain(format!("position out of range 1..={}", self.len));
        }
        Ok(self.lcp0(i - 1, j - 1))
    }

    #[inline]
    pub(crate) fn lcp0(&self, i: usize, j: usize) -> usize {
        if i == j {
            return self.len - i;
        }
        let (a, b) = (self.inverse[i] as usize, self.inverse[j] as usize);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.rmq.min(&self.lcp, lo, hi) as usize
    }
}

/// Index over `P · # · T` answering lcp queries between a suffix of `P` and a
/// suffix of `T`. The separator sorts before every code.
#[derive(Debug, Clone)]
pub struct CrossIndex {
    index: LcpIndex,
    p_len: usize,
    t_len: usize,
}

/// Builds the cross index of two texts over the same alphabet.
pub fn build_cross_index(p: &Text, t: &Text) -> Result<CrossIndex> {
    if p.alphabet() != t.alphabet() {
        return domain("pattern and text use different alphabets");
    }
    CrossIndex::from_codes(p.letters(), t.letters())
}

impl CrossIndex {
    /// Codes must be below `u32::MAX`; they are shifted up by one so that the
    /// separator can take code zero.
    pub fn from_codes(p: &[u32], t: &[u32]) -> Result<Self> {
        if p.is_empty() || t.is_empty() {
            return domain("cross index needs two non-empty strings");
        }
        let mut codes = Vec::with_capacity(p.len() + t.len() + 1);
        for &c in p.iter().chain(std::iter::once(&u32::MAX)).chain(t) {
            codes.push(c.wrapping_add(1));
        }
        let index = LcpIndex::from_codes(&codes)?;
        Ok(CrossIndex { index, p_len: p.len(), t_len: t.len() })
    }

    pub fn pattern_len(&self) -> usize {
        self.p_len
    }

    pub fn text_len(&self) -> usize {
        self.t_len
    }

    pub fn index(&self) -> &LcpIndex {
        &self.index
    }

    /// Longest common prefix of `P[i..]` and `T[j..]` (1-based).
    pub fn cross_lcp(&self, i: usize, j: usize) -> Result<usize> {
        if i == 0 || i > self.p_len || j == 0 || j > self.t_len {
            return domain("cross_lcp position out of range");
        }
        Ok(self.cross_lcp0(i - 1, j - 1))
    }

    #[inline]
    pub(crate) fn cross_lcp0(&self, i: usize, j: usize) -> usize {
        let raw = self.index.lcp0(i, self.p_len + 1 + j);
        raw.min(self.p_len - i)
    }
}

/// Prefix doubling with counting sorts; O(n log n).
fn suffix_array(codes: &[u32]) -> Vec<u32> {
    let n = codes.len();
    let mut distinct: Vec<u32> = codes.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let mut rank: Vec<u32> = codes.iter().map(|c| distinct.binary_search(c).expect("code present") as u32).collect();
    let mut classes = distinct.len();

    let mut sa: Vec<u32> = (0..n as u32).collect();
    sa.sort_unstable_by_key(|&i| rank[i as usize]);
    if classes == n {
        return sa;
    }

    let mut tmp = vec![0u32; n];
    let mut count = vec![0usize; n.max(classes) + 1];
    let mut new_rank = vec![0u32; n];
    let mut k = 1usize;
    loop {
        // Order by second key: suffixes too short for it come first.
        let mut p = 0;
        for i in n - k.min(n)..n {
            tmp[p] = i as u32;
            p += 1;
        }
        for &s in &sa {
            if s as usize >= k {
                tmp[p] = s - k as u32;
                p += 1;
            }
        }
        // Stable counting sort by first key.
        count[..=classes].iter_mut().for_each(|c| *c = 0);
        for &r in &rank {
            count[r as usize + 1] += 1;
        }
        for c in 1..=classes {
            count[c] += count[c - 1];
        }
        for &s in &tmp {
            let r = rank[s as usize] as usize;
            sa[count[r]] = s;
            count[r] += 1;
        }
        let key = |i: usize| {
            let second = if i + k < n { rank[i + k] as i64 } else { -1 };
            (rank[i], second)
        };
        new_rank[sa[0] as usize] = 0;
        let mut c = 0u32;
        for w in 1..n {
            if key(sa[w] as usize) != key(sa[w - 1] as usize) {
                c += 1;
            }
            new_rank[sa[w] as usize] = c;
        }
        std::mem::swap(&mut rank, &mut new_rank);
        classes = c as usize + 1;
        if classes == n {
            return sa;
        }
        k *= 2;
    }
}

fn kasai(codes: &[u32], sa: &[u32], inverse: &[u32]) -> Vec<u32> {
    let n = codes.len();
    let mut lcp = vec![0u32; n.saturating_sub(1)];
    let mut h = 0usize;
    for i in 0..n {
        let r = inverse[i] as usize;
        if r + 1 == n {
            h = 0;
            continue;
        }
        let j = sa[r + 1] as usize;
        while i + h < n && j + h < n && codes[i + h] == codes[j + h] {
            h += 1;
        }
        lcp[r] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}

/// Range-minimum structure; `levels[k][i]` is the minimum of `2^(k+1)`
/// entries starting at `i`. Level zero is the base array itself.
#[derive(Debug, Clone)]
struct SparseTable {
    levels: Vec<Vec<u32>>,
}

impl SparseTable {
    fn new(base: &[u32]) -> Self {
        let mut levels: Vec<Vec<u32>> = Vec::new();
        let mut width = 1usize;
        while width * 2 <= base.len() {
            let prev: &[u32] = levels.last().map(|v| v.as_slice()).unwrap_or(base);
            let next: Vec<u32> = (0..=base.len() - 2 * width).map(|i| prev[i].min(prev[i + width])).collect();
            levels.push(next);
            width *= 2;
        }
        SparseTable { levels }
    }

    /// Minimum of `base[lo..hi]`, `lo < hi`.
    #[inline]
    fn min(&self, base: &[u32], lo: usize, hi: usize) -> u32 {
        let len = hi - lo;
        let k = usize::BITS - 1 - len.leading_zeros();
        if k == 0 {
            return base[lo];
        }
        let level = &self.levels[k as usize - 1];
        level[lo].min(level[hi - (1 << k)])
    }
}
