//! Seeded instance generators shared by the integration tests.
#![allow(dead_code)]

use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use um_core::{Alphabet, Knapsack, Letter, NegLog, Profile, Text, WeightedSequence};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn alphabet(sigma: usize) -> Alphabet {
    Alphabet::synthetic(sigma)
}

pub fn text(rng: &mut impl Rng, n: usize, sigma: usize) -> Text {
    Text::new((0..n).map(|_| rng.gen_range(0..sigma as Letter)).collect(), alphabet(sigma)).unwrap()
}

pub fn profile(rng: &mut impl Rng, m: usize, sigma: usize, range: i64) -> Profile {
    let rows = (0..m).map(|_| (0..sigma).map(|_| rng.gen_range(-range..=range)).collect()).collect();
    Profile::new(alphabet(sigma), rows).unwrap()
}

/// Row with `1..=λ` letters; when `heavy` is given that letter is strictly
/// the most probable.
pub fn row(rng: &mut impl Rng, sigma: usize, lambda: usize, heavy: Option<usize>) -> Vec<f64> {
    let k = rng.gen_range(1..=lambda.min(sigma));
    let mut letters = sample(rng, sigma, k).into_vec();
    if let Some(h) = heavy {
        letters.retain(|&s| s != h);
        letters.truncate(k - 1);
        letters.insert(0, h);
    }
    let mut weights: Vec<f64> = letters.iter().map(|_| rng.gen_range(0.05..1.0)).collect();
    if heavy.is_some() {
        weights[0] = 1.5 + rng.gen::<f64>();
    }
    // Some rows leave probability mass unassigned.
    let total: f64 = weights.iter().sum::<f64>() * if rng.gen_bool(0.2) { 1.25 } else { 1.0 };
    let mut out = vec![0.0; sigma];
    for (&s, w) in letters.iter().zip(weights) {
        out[s] = w / total;
    }
    out
}

pub fn weighted(rng: &mut impl Rng, n: usize, sigma: usize, lambda: usize) -> WeightedSequence {
    let rows: Vec<_> = (0..n).map(|_| row(rng, sigma, lambda, None)).collect();
    WeightedSequence::from_probabilities(alphabet(sigma), &rows).unwrap()
}

/// Pair whose heavy letters differ at every position.
pub fn dissimilar(rng: &mut impl Rng, n: usize, sigma: usize, lambda: usize) -> (WeightedSequence, WeightedSequence) {
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for _ in 0..n {
        let hx = rng.gen_range(0..sigma);
        let hy = (hx + rng.gen_range(1..sigma)) % sigma;
        xs.push(row(rng, sigma, lambda, Some(hx)));
        ys.push(row(rng, sigma, lambda, Some(hy)));
    }
    (
        WeightedSequence::from_probabilities(alphabet(sigma), &xs).unwrap(),
        WeightedSequence::from_probabilities(alphabet(sigma), &ys).unwrap(),
    )
}

/// Copies rows of `p` over `t` at random offsets so windows resemble `p`.
pub fn implant(rng: &mut impl Rng, t: &WeightedSequence, p: &WeightedSequence, times: usize) -> WeightedSequence {
    let mut rows = t.to_probabilities();
    if p.len() <= t.len() {
        let pr = p.to_probabilities();
        for _ in 0..times {
            let at = rng.gen_range(0..=t.len() - p.len());
            for (k, r) in pr.iter().enumerate() {
                if rng.gen_bool(0.85) {
                    rows[at + k] = r.clone();
                }
            }
        }
    }
    WeightedSequence::from_probabilities(t.alphabet().clone(), &rows).unwrap()
}

/// Knapsack instance with `Π|C_i| ≤ limit`.
pub fn knapsack(rng: &mut impl Rng, limit: u128, max_n: usize, lambda: usize, range: i64) -> Knapsack {
    let mut classes: Vec<Vec<(i64, i64)>> = Vec::new();
    let mut product = 1u128;
    let n = rng.gen_range(1..=max_n);
    for _ in 0..n {
        let size = rng.gen_range(1..=lambda);
        if product * size as u128 > limit {
            break;
        }
        product *= size as u128;
        classes.push((0..size).map(|_| (rng.gen_range(-range..=range), rng.gen_range(-range..=range))).collect());
    }
    if classes.is_empty() {
        classes.push(vec![(rng.gen_range(-range..=range), rng.gen_range(-range..=range))]);
    }
    let mid = |c: &Vec<Vec<(i64, i64)>>, f: fn(&(i64, i64)) -> i64| -> i64 {
        c.iter().map(|cl| cl.iter().map(f).sum::<i64>() / cl.len() as i64).sum()
    };
    let spread = range * (classes.len() as i64).max(1) / 2 + 1;
    let v = mid(&classes, |x| x.0) + rng.gen_range(-spread..=spread);
    let w = mid(&classes, |x| x.1) + rng.gen_range(-spread..=spread);
    Knapsack::new(classes, v, w).unwrap()
}

pub fn hamming(a: &[Letter], b: &[Letter]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

pub fn neglog_sum(s: &[Letter], x: &WeightedSequence, offset: usize) -> NegLog {
    s.iter().enumerate().map(|(i, &c)| x.prob(offset + i, c)).sum()
}
