//! Integer scalars for scores, values and weights.
//!
//! Profiles and knapsack instances are generic over the integer type that
//! carries their entries. Everything is exact, so only primitive signed
//! integers qualify; the crate root exposes `i64` aliases for the common case.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_traits::{CheckedAdd, CheckedMul, CheckedSub, NumCast, PrimInt, Signed, ToPrimitive};

/// Signed primitive integer usable as a score, value or weight.
pub trait Scalar:
    PrimInt
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + NumCast
    + ToPrimitive
    + Hash
    + Debug
    + Display
    + FromStr
    + Default
    + Send
    + Sync
    + 'static
{
    /// Lossless widening used by overflow checks and reductions.
    fn widen(self) -> i128 {
        self.to_i128().expect("primitive integers fit in i128")
    }

    /// Narrowing conversion; `None` when the value does not fit.
    fn narrow(x: i128) -> Option<Self> {
        <Self as NumCast>::from(x)
    }
}

impl<T> Scalar for T where
    T: PrimInt
        + Signed
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + NumCast
        + ToPrimitive
        + Hash
        + Debug
        + Display
        + FromStr
        + Default
        + Send
        + Sync
        + 'static
{
}

#[cfg(test)]
mod tests {
    use super::Scalar;

    #[test]
    fn narrow_rejects_out_of_range() {
        assert_eq!(<i32 as Scalar>::narrow(1 << 40), None);
        assert_eq!(<i64 as Scalar>::narrow(1 << 40), Some(1i64 << 40));
        assert_eq!(Scalar::widen(-5i32), -5i128);
    }
}
