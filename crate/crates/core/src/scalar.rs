use std::fmt::Debug;
use std::ops::Neg;

use num_rational::BigRational;
use num_traits::{FromPrimitive, Num};

/// Number type the class-number and trace-formula code is written against.
///
/// Exact equality checks only make sense for rational instantiations;
/// `f64` works for approximate cross-checks.
pub trait Scalar:
    Clone + Debug + PartialEq + Num + Neg<Output = Self> + FromPrimitive + Send + Sync
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer representable in scalar type")
    }

    fn from_u64_lossless(n: u64) -> Self {
        Self::from_u64(n).expect("integer representable in scalar type")
    }

    /// `num / den`; `den` must be nonzero.
    fn ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }
}

impl<T> Scalar for T where
    T: Clone + Debug + PartialEq + Num + Neg<Output = T> + FromPrimitive + Send + Sync
{
}

/// Lowest-terms `"num/den"` with a positive denominator.
pub fn rat_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}
