//! Exact scalar fields.
//!
//! Linear algebra and metric code is generic over [`Scalar`], which is only
//! implemented for exact rational types. Every routine in this crate relies
//! on exact zero tests and exact equality, so floating point types are
//! deliberately left out.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

/// An exact, totally ordered field.
pub trait Scalar:
    Clone + Debug + Display + Eq + Ord + Hash + Num + Signed + Send + Sync + 'static
{
    fn from_i64(value: i64) -> Self;

    fn from_frac(numer: i64, denom: i64) -> Self {
        Self::from_i64(numer) / Self::from_i64(denom)
    }
}

impl<T> Scalar for Ratio<T>
where
    T: Clone + Debug + Display + Integer + Signed + Hash + From<i64> + Send + Sync + 'static,
{
    fn from_i64(value: i64) -> Self {
        Ratio::from_integer(T::from(value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn ratios_are_reduced_with_positive_denominator() {
        let x: Ratio<BigInt> = Scalar::from_frac(4, -6);
        assert_eq!(x.numer(), &BigInt::from(-2));
        assert_eq!(x.denom(), &BigInt::from(3));
        assert_eq!(x.to_string(), "-2/3");
    }

    #[test]
    fn small_ratio_type_is_a_scalar() {
        let x: Ratio<i64> = Scalar::from_frac(1, 2);
        assert_eq!(x + Ratio::from_i64(1), Ratio::new(3, 2));
    }
}
