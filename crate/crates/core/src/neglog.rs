//! Exact log-domain probabilities.
//!
//! A probability `p` is stored as the integer `round(-log2(p) * 2^32)`, so
//! products become integer additions and quotients integer subtractions.
//! Probability zero has the dedicated value [`NegLog::INF`].

use std::fmt;
use std::ops::Add;

use crate::error::{domain, Result};

/// Fractional bits of the fixed-point encoding.
pub const FRACTION_BITS: u32 = 32;

/// One bit of information, i.e. probability 1/2.
pub const ONE_BIT: u64 = 1 << FRACTION_BITS;

/// Fixed-point `-log2(probability)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct NegLog(u64);

impl NegLog {
    /// Probability one.
    pub const ONE: NegLog = NegLog(0);
    /// Probability zero; absorbs every addition.
    pub const INF: NegLog = NegLog(u64::MAX);

    pub const fn from_units(units: u64) -> Self {
        NegLog(units)
    }

    pub const fn units(self) -> u64 {
        self.0
    }

    pub fn is_zero_probability(self) -> bool {
        self == NegLog::INF
    }

    /// Converts a probability in `[0, 1]`, rounding half to even.
    pub fn from_probability(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) || p.is_nan() {
            return domain(format!("probability {p} outside [0, 1]"));
        }
        if p == 0.0 {
            return Ok(NegLog::INF);
        }
        let units = (-p.log2() * ONE_BIT as f64).round_ties_even();
        Ok(NegLog(units.max(0.0) as u64))
    }

    /// `2^(-units / 2^32)`; zero for `INF`.
    pub fn probability(self) -> f64 {
        if self == NegLog::INF {
            0.0
        } else {
            (-(self.0 as f64) / ONE_BIT as f64).exp2()
        }
    }

    /// `-log2` of the probability as a real number.
    pub fn bits(self) -> f64 {
        if self == NegLog::INF {
            f64::INFINITY
        } else {
            self.0 as f64 / ONE_BIT as f64
        }
    }

    /// Division of probabilities: `self / other` in the probability domain.
    /// Requires `other` finite and `self >= other` unless `self` is `INF`.
    pub fn divide(self, other: NegLog) -> NegLog {
        debug_assert!(other != NegLog::INF);
        if self == NegLog::INF {
            return NegLog::INF;
        }
        NegLog(self.0 - other.0)
    }
}

impl Add for NegLog {
    type Output = NegLog;

    /// Product of probabilities. Saturates to `INF`.
    fn add(self, rhs: NegLog) -> NegLog {
        NegLog(self.0.saturating_add(rhs.0))
    }
}

impl std::iter::Sum for NegLog {
    fn sum<I: Iterator<Item = NegLog>>(iter: I) -> NegLog {
        iter.fold(NegLog::ONE, |a, b| a + b)
    }
}

impl fmt::Display for NegLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == NegLog::INF {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Threshold probability `1/z`, `z >= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbThreshold {
    z_neglog: NegLog,
    z: f64,
}

impl ProbThreshold {
    /// From a real `z >= 1`.
    pub fn new(z: f64) -> Result<Self> {
        if z.is_nan() || z < 1.0 {
            return domain(format!("threshold z = {z} must be at least 1"));
        }
        if z.is_infinite() {
            return Ok(ProbThreshold::unbounded());
        }
        let units = (z.log2() * ONE_BIT as f64).round_ties_even() as u64;
        Ok(ProbThreshold { z_neglog: NegLog(units), z })
    }

    /// `z = 2^k`, exact.
    pub fn power_of_two(k: u32) -> Self {
        ProbThreshold { z_neglog: NegLog((k as u64) << FRACTION_BITS), z: (k as f64).exp2() }
    }

    /// A threshold given directly in fixed-point units of `log2 z`.
    pub fn from_neglog(z_neglog: NegLog) -> Self {
        ProbThreshold { z_neglog, z: z_neglog.bits().exp2() }
    }

    /// Every nonzero probability passes.
    pub fn unbounded() -> Self {
        ProbThreshold { z_neglog: NegLog(u64::MAX - 1), z: f64::INFINITY }
    }

    /// Parses `z` written as a decimal or as `2^<int>`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(exp) = s.strip_prefix("2^") {
            return match exp.parse::<u32>() {
                Ok(k) if k < 64 => Ok(ProbThreshold::power_of_two(k)),
                _ => domain(format!("bad exponent in threshold {s:?}")),
            };
        }
        match s.parse::<f64>() {
            Ok(z) => ProbThreshold::new(z),
            Err(_) => domain(format!("cannot parse threshold {s:?}")),
        }
    }

    /// `log2 z` in fixed point, i.e. the NegLog of `1/z`.
    pub fn neglog(&self) -> NegLog {
        self.z_neglog
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    /// `⌊log2 z⌋`.
    pub fn floor_log2(&self) -> u32 {
        (self.z_neglog.units() >> FRACTION_BITS) as u32
    }

    /// Whether a probability given as NegLog is at least `1/z`.
    #[inline]
    pub fn admits(&self, p: NegLog) -> bool {
        p <= self.z_neglog
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyadic_probabilities_are_exact() {
        assert_eq!(NegLog::from_probability(1.0).unwrap(), NegLog::ONE);
        assert_eq!(NegLog::from_probability(0.5).unwrap().units(), ONE_BIT);
        assert_eq!(NegLog::from_probability(0.25).unwrap().units(), 2 * ONE_BIT);
        assert_eq!(NegLog::from_probability(0.0).unwrap(), NegLog::INF);
        let three_quarters = NegLog::from_probability(0.75).unwrap();
        assert_eq!(three_quarters.units(), ((2.0 - 3f64.log2()) * ONE_BIT as f64).round() as u64);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(NegLog::from_probability(-0.1).is_err());
        assert!(NegLog::from_probability(1.5).is_err());
        assert!(NegLog::from_probability(f64::NAN).is_err());
    }

    #[test]
    fn inf_absorbs() {
        let half = NegLog::from_units(ONE_BIT);
        assert_eq!(half + NegLog::INF, NegLog::INF);
        assert_eq!(NegLog::INF.divide(half), NegLog::INF);
        assert_eq!((half + half).divide(half), half);
    }

    #[test]
    fn thresholds() {
        let t = ProbThreshold::parse("2^10").unwrap();
        assert_eq!(t.neglog().units(), 10 * ONE_BIT);
        assert_eq!(t.floor_log2(), 10);
        assert_eq!(ProbThreshold::parse("4").unwrap().neglog().units(), 2 * ONE_BIT);
        assert_eq!(ProbThreshold::parse("3").unwrap().floor_log2(), 1);
        assert!(ProbThreshold::parse("0.5").is_err());
        assert!(ProbThreshold::parse("abc").is_err());
        let one = ProbThreshold::new(1.0).unwrap();
        assert!(one.admits(NegLog::ONE));
        assert!(!one.admits(NegLog::from_units(1)));
        assert!(ProbThreshold::unbounded().admits(NegLog::from_units(u64::MAX / 2)));
        assert!(!ProbThreshold::unbounded().admits(NegLog::INF));
    }
}
