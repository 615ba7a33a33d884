//! The scalar abstraction behind the two arithmetic flavors.
//!
//! Every algorithm in this crate runs over either exact rationals
//! ([`num_rational::BigRational`]) or doubles (`f64`). The [`Scalar`]
//! trait is the small common surface both provide.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A coefficient scalar: exact rational or double-precision float.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;

    /// Nearest double. Exact rationals outside the double range map to
    /// the signed infinity.
    fn to_f64(&self) -> f64;

    /// False only for non-finite floats; rationals are always finite.
    fn is_finite_value(&self) -> bool;
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            if self.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }

    fn is_finite_value(&self) -> bool {
        true
    }
}
