//! Ordered alphabets and letter indices.

use std::collections::HashMap;
use std::fmt;

use crate::error::{domain, Result};

/// A letter is its index in the alphabet, so letter order is alphabet order.
pub type Letter = u32;

/// Character reserved for the separator of concatenated texts (and comments
/// in the file formats).
pub const RESERVED: char = '#';

/// Ordered set of distinct symbols.
#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<char>,
    index: HashMap<char, Letter>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return domain("alphabet must not be empty");
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, &c) in symbols.iter().enumerate() {
            if c == RESERVED || c.is_whitespace() || c.is_control() {
                return domain(format!("symbol {c:?} is reserved"));
            }
            if index.insert(c, i as Letter).is_some() {
                return domain(format!("duplicate symbol {c:?}"));
            }
        }
        Ok(Alphabet { symbols, index })
    }

    /// Parses the compact header form, e.g. `ACGT`.
    pub fn parse(symbols: &str) -> Result<Self> {
        Alphabet::new(symbols.chars())
    }

    /// An alphabet of `size` printable symbols: `a..z`, `A..Z`, `0..9`, then
    /// Latin-1 and CJK code points.
    pub fn synthetic(size: usize) -> Self {
        let symbols = ('a'..='z')
            .chain('A'..='Z')
            .chain('0'..='9')
            .chain((0x00C0u32..0x0250).filter_map(char::from_u32))
            .chain((0x4E00u32..0xA000).filter_map(char::from_u32))
            .take(size)
            .collect::<Vec<_>>();
        assert_eq!(symbols.len(), size, "synthetic alphabet too large");
        Alphabet::new(symbols).expect("synthetic symbols are distinct")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn letter(&self, c: char) -> Option<Letter> {
        self.index.get(&c).copied()
    }

    pub fn symbol(&self, letter: Letter) -> char {
        self.symbols[letter as usize]
    }

    /// Encodes a string; fails on foreign symbols.
    pub fn encode(&self, s: &str) -> Result<Vec<Letter>> {
        s.chars()
            .map(|c| match self.letter(c) {
                Some(l) => Ok(l),
                None => domain(format!("symbol {c:?} is not in the alphabet")),
            })
            .collect()
    }

    pub fn decode(&self, letters: &[Letter]) -> String {
        letters.iter().map(|&l| self.symbol(l)).collect()
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({})", self)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.symbols.iter().try_for_each(|c| write!(f, "{c}"))
    }
}
