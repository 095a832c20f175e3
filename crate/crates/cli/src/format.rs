//! Instance file formats.
//!
//! All formats are whitespace separated and skip lines starting with `#`.
//!
//! ```text
//! PROFILE <m> <alphabet>      followed by m rows of σ integers
//! PWM <n> <alphabet>          followed by n rows of σ decimals
//! MCK <n> <V> <W>             followed by n blocks: <size>, then size lines <v> <w>
//! ```
//!
//! Plain strings are stored as their symbols on one or more lines.

use std::fmt::Write as _;

use anyhow::{anyhow, bail, Context, Result};
use um_core::{Alphabet, Knapsack, Profile, Text, WeightedSequence};

/// Largest magnitude accepted for knapsack values, weights and thresholds.
pub const MCK_VALUE_LIMIT: i64 = 1 << 40;
/// Largest number of knapsack classes accepted.
pub const MCK_CLASS_LIMIT: usize = 1 << 20;

struct Tokens<'a> {
    items: Vec<(&'a str, usize)>,
    pos: usize,
    last_line: usize,
}

impl<'a> Tokens<'a> {
    fn new(src: &'a str) -> Self {
        let items = src
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim_start().starts_with('#'))
            .flat_map(|(i, l)| l.split_whitespace().map(move |t| (t, i + 1)))
            .collect();
        Tokens { items, pos: 0, last_line: src.lines().count().max(1) }
    }

    fn next(&mut self, what: &str) -> Result<(&'a str, usize)> {
        let tok = self.items.get(self.pos).copied();
        self.pos += 1;
        tok.ok_or_else(|| anyhow!("line {}: unexpected end of file, expected {what}", self.last_line))
    }

    fn parse<T: std::str::FromStr>(&mut self, what: &str) -> Result<(T, usize)> {
        let (tok, line) = self.next(what)?;
        let v = tok.parse().map_err(|_| anyhow!("line {line}: expected {what}, found {tok:?}"))?;
        Ok((v, line))
    }

    fn keyword(&mut self, word: &str) -> Result<()> {
        let (tok, line) = self.next(word)?;
        if tok != word {
            bail!("line {line}: expected header {word}, found {tok:?}");
        }
        Ok(())
    }

    fn alphabet(&mut self) -> Result<Alphabet> {
        let (tok, line) = self.next("alphabet")?;
        Alphabet::parse(tok).map_err(|e| anyhow!("line {line}: {e}"))
    }

    fn finish(&self) -> Result<()> {
        match self.items.get(self.pos) {
            Some((tok, line)) => bail!("line {line}: trailing token {tok:?}"),
            None => Ok(()),
        }
    }
}

fn symbols(a: &Alphabet) -> String {
    a.symbols().iter().collect()
}

pub fn parse_profile(src: &str) -> Result<Profile> {
    let mut t = Tokens::new(src);
    t.keyword("PROFILE")?;
    let (m, _) = t.parse::<usize>("profile length")?;
    let alphabet = t.alphabet()?;
    let mut rows = Vec::with_capacity(m);
    for _ in 0..m {
        let mut row = Vec::with_capacity(alphabet.len());
        for _ in 0..alphabet.len() {
            row.push(t.parse::<i64>("integer score")?.0);
        }
        rows.push(row);
    }
    t.finish()?;
    Profile::new(alphabet, rows).context("invalid profile")
}

pub fn write_profile(p: &Profile) -> String {
    let mut s = format!("PROFILE {} {}\n", p.len(), symbols(p.alphabet()));
    for i in 0..p.len() {
        let row: Vec<String> = p.row(i).iter().map(i64::to_string).collect();
        writeln!(s, "{}", row.join(" ")).unwrap();
    }
    s
}

pub fn parse_pwm(src: &str) -> Result<WeightedSequence> {
    let mut t = Tokens::new(src);
    t.keyword("PWM")?;
    let (n, _) = t.parse::<usize>("sequence length")?;
    let alphabet = t.alphabet()?;
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(alphabet.len());
        let mut line = 0;
        for _ in 0..alphabet.len() {
            let (p, l) = t.parse::<f64>("probability")?;
            line = l;
            row.push(p);
        }
        // Validate row by row so the diagnostic can name the line.
        WeightedSequence::from_probabilities(alphabet.clone(), std::slice::from_ref(&row))
            .map_err(|e| anyhow!("line {line}: position {}: {e}", i + 1))?;
        rows.push(row);
    }
    t.finish()?;
    WeightedSequence::from_probabilities(alphabet, &rows).context("invalid weighted sequence")
}

/// Probability with at most four decimals, trailing zeros trimmed.
pub fn format_probability(p: f64) -> String {
    let s = format!("{p:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() {
        "0".into()
    } else {
        s.to_string()
    }
}

pub fn write_pwm(x: &WeightedSequence) -> String {
    let mut s = format!("PWM {} {}\n", x.len(), symbols(x.alphabet()));
    for row in x.to_probabilities() {
        let row: Vec<String> = row.into_iter().map(format_probability).collect();
        writeln!(s, "{}", row.join(" ")).unwrap();
    }
    s
}

pub fn parse_text(src: &str, alphabet: &Alphabet) -> Result<Text> {
    let mut letters = Vec::new();
    for (i, line) in src.lines().enumerate() {
        if line.trim_start().starts_with('#') {
            continue;
        }
        for c in line.chars().filter(|c| !c.is_whitespace()) {
            let l = alphabet
                .letter(c)
                .ok_or_else(|| anyhow!("line {}: symbol {c:?} is not in alphabet {:?}", i + 1, symbols(alphabet)))?;
            letters.push(l);
        }
    }
    Ok(Text::new(letters, alphabet.clone())?)
}

pub fn write_text(t: &Text) -> String {
    format!("{}\n", t.alphabet().decode(t.letters()))
}

pub fn parse_mck(src: &str) -> Result<Knapsack> {
    let mut t = Tokens::new(src);
    t.keyword("MCK")?;
    let (n, line) = t.parse::<usize>("class count")?;
    if n == 0 || n >= MCK_CLASS_LIMIT {
        bail!("line {line}: class count must be in 1..{MCK_CLASS_LIMIT}");
    }
    let mut bounded = |what: &str| -> Result<i64> {
        let (v, line) = t.parse::<i64>(what)?;
        if v.abs() >= MCK_VALUE_LIMIT {
            bail!("line {line}: {what} {v} exceeds ±2^40");
        }
        Ok(v)
    };
    let v_cap = bounded("value threshold")?;
    let w_cap = bounded("weight threshold")?;
    let mut classes = Vec::with_capacity(n);
    for i in 0..n {
        let (size, line) = t.parse::<usize>("class size")?;
        if size == 0 {
            bail!("line {line}: class {} is empty", i + 1);
        }
        let mut class = Vec::with_capacity(size);
        for _ in 0..size {
            let (v, l) = t.parse::<i64>("item value")?;
            let (w, _) = t.parse::<i64>("item weight")?;
            if v.abs() >= MCK_VALUE_LIMIT || w.abs() >= MCK_VALUE_LIMIT {
                bail!("line {l}: item exceeds ±2^40");
            }
            class.push((v, w));
        }
        classes.push(class);
    }
    t.finish()?;
    Knapsack::new(classes, v_cap, w_cap).context("invalid knapsack instance")
}

pub fn write_mck(inst: &Knapsack) -> String {
    let mut s = format!("MCK {} {} {}\n", inst.n(), inst.v_cap(), inst.w_cap());
    for class in inst.classes() {
        writeln!(s, "{}", class.len()).unwrap();
        for item in &class.items {
            writeln!(s, "{} {}", item.v, item.w).unwrap();
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_round_trip() {
        let src = "# scores\nPROFILE 2 ab\n3 0\n2 5\n";
        let p = parse_profile(src).unwrap();
        assert_eq!(write_profile(&p), "PROFILE 2 ab\n3 0\n2 5\n");
    }

    #[test]
    fn pwm_round_trip() {
        let src = "PWM 4 ab\n0.5 0.5\n1 0\n0.75 0.25\n0 1\n";
        assert_eq!(write_pwm(&parse_pwm(src).unwrap()), src);
    }

    #[test]
    fn mck_round_trip() {
        let src = "MCK 2 5 3\n2\n1 5\n3 1\n2\n2 2\n4 0\n";
        assert_eq!(write_mck(&parse_mck(src).unwrap()), src);
    }

    #[test]
    fn diagnostics_name_lines() {
        let err = parse_pwm("PWM 2 ab\n0.5 0.5\n0.9 0.5\n").unwrap_err().to_string();
        assert!(err.starts_with("line 3:"), "{err}");
        let err = parse_mck("MCK 1 0 0\n1\n1 x\n").unwrap_err().to_string();
        assert!(err.starts_with("line 3:"), "{err}");
        let err = parse_profile("PROFILE 1 ab\n1\n").unwrap_err().to_string();
        assert!(err.contains("end of file"), "{err}");
        let err = parse_text("ab\n#c\nac\n", &Alphabet::parse("ab").unwrap()).unwrap_err().to_string();
        assert!(err.starts_with("line 3:"), "{err}");
        assert!(parse_mck("MCK 1 0 0\n1\n1099511627776 0\n").is_err());
        assert!(parse_mck("MCK 1 0 0\n1\n0 0\n7\n").is_err());
    }

    #[test]
    fn probabilities_are_trimmed() {
        assert_eq!(format_probability(0.25), "0.25");
        assert_eq!(format_probability(1.0), "1");
        assert_eq!(format_probability(0.0), "0");
        assert_eq!(format_probability(0.12340000001), "0.1234");
    }
}
