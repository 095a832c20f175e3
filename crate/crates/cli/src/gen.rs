//! Seeded random instances.
//!
//! Distributions:
//! - `pwm`: each row picks `1..=λ` distinct letters uniformly and splits
//!   probability between them by normalized exponential draws (a flat
//!   Dirichlet), quantized down to multiples of `10^-4` with at least one
//!   unit per letter, so rows sum to at most 1.
//! - `profile`: integer scores uniform in `[-range, range]`.
//! - `text`: letters uniform over the alphabet.
//! - `mck`: class sizes uniform in `1..=λ`, values and weights uniform in
//!   `[0, range]`, thresholds uniform in `[0, n·range/2]`.

use clap::{Args, ValueEnum};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use um_core::{Alphabet, Knapsack, Profile, Text, WeightedSequence};

use crate::format::{write_mck, write_profile, write_pwm, write_text};

const QUANTUM: u32 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Pwm,
    Profile,
    Text,
    Mck,
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    /// What to generate.
    #[arg(value_enum)]
    pub kind: Kind,
    /// Length of the sequence, profile or text; number of classes for mck.
    #[arg(long, default_value_t = 10)]
    pub length: usize,
    /// Alphabet size.
    #[arg(long, default_value_t = 4)]
    pub sigma: usize,
    /// Largest number of letters per position, or items per class.
    #[arg(long, default_value_t = 2)]
    pub lambda: usize,
    /// Bound on generated integers.
    #[arg(long, default_value_t = 10)]
    pub range: i64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Letters `ACGT` for `σ = 4`, otherwise a synthetic alphabet.
pub fn alphabet(sigma: usize) -> Alphabet {
    if sigma == 4 {
        Alphabet::parse("ACGT").unwrap()
    } else {
        Alphabet::synthetic(sigma)
    }
}

pub fn generate(args: &GenArgs) -> anyhow::Result<String> {
    anyhow::ensure!(args.sigma >= 1, "sigma must be at least 1");
    anyhow::ensure!(args.lambda >= 1, "lambda must be at least 1");
    anyhow::ensure!(args.range >= 0, "range must be non-negative");
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    Ok(match args.kind {
        Kind::Pwm => write_pwm(&pwm(&mut rng, args.length, args.sigma, args.lambda)),
        Kind::Profile => write_profile(&profile(&mut rng, args.length, args.sigma, args.range)),
        Kind::Text => write_text(&text(&mut rng, args.length, args.sigma)),
        Kind::Mck => {
            anyhow::ensure!(args.length >= 1, "mck needs at least one class");
            write_mck(&mck(&mut rng, args.length, args.lambda, args.range))
        }
    })
}

pub fn pwm(rng: &mut impl Rng, n: usize, sigma: usize, lambda: usize) -> WeightedSequence {
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            let k = rng.gen_range(1..=lambda.min(sigma));
            let letters = sample(rng, sigma, k).into_vec();
            let draws: Vec<f64> = (0..k).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
            let total: f64 = draws.iter().sum();
            let spare = (QUANTUM - k as u32) as f64;
            let mut row = vec![0.0; sigma];
            for (&s, d) in letters.iter().zip(&draws) {
                let units = 1 + (spare * d / total).floor() as u32;
                row[s] = units as f64 / QUANTUM as f64;
            }
            row
        })
        .collect();
    WeightedSequence::from_probabilities(alphabet(sigma), &rows).expect("rows sum to at most one")
}

pub fn profile(rng: &mut impl Rng, m: usize, sigma: usize, range: i64) -> Profile {
    let rows = (0..m).map(|_| (0..sigma).map(|_| rng.gen_range(-range..=range)).collect()).collect();
    Profile::new(alphabet(sigma), rows).expect("rectangular rows")
}

pub fn text(rng: &mut impl Rng, n: usize, sigma: usize) -> Text {
    let letters = (0..n).map(|_| rng.gen_range(0..sigma as u32)).collect();
    Text::new(letters, alphabet(sigma)).expect("letters in range")
}

pub fn mck(rng: &mut impl Rng, n: usize, lambda: usize, range: i64) -> Knapsack {
    let classes = (0..n)
        .map(|_| {
            let size = rng.gen_range(1..=lambda);
            (0..size).map(|_| (rng.gen_range(0..=range), rng.gen_range(0..=range))).collect()
        })
        .collect();
    let top = n as i64 * range / 2;
    let (v, w) = (rng.gen_range(0..=top), rng.gen_range(0..=top));
    Knapsack::new(classes, v, w).expect("generated values are small")
}
