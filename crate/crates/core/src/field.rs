//! Scalar fields.
//!
//! Every algorithm in this crate is generic over [`Scalar`]. Two realizations
//! ship: arbitrary-precision rationals ([`Rational`]) for exact law checking,
//! and `f64` for the approximate paths.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{BigInt, One, Signed, ToPrimitive, Zero};

/// Arbitrary precision rational number.
pub type Rational = num::BigRational;

/// Absolute tolerance on unit-max-norm scaled entries used for float equality.
pub const FLOAT_EQ_TOL: f64 = 1e-9;

/// Relative pivot threshold below which a float matrix is treated as singular.
pub const FLOAT_PIVOT_TOL: f64 = 1e-12;

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    /// `true` when arithmetic is exact and equality is meaningful bit-for-bit.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    /// Absolute value as a float, used for pivot selection and tolerances.
    fn magnitude(&self) -> f64;

    /// Treats `self` as zero relative to `scale` (the max-norm of the
    /// surrounding data). Exact fields only accept a literal zero.
    fn is_negligible(&self, scale: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.magnitude() <= FLOAT_PIVOT_TOL * scale.max(f64::MIN_POSITIVE)
        }
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

/// Elementwise equality of two scalar sequences: exact for exact fields,
/// otherwise within [`FLOAT_EQ_TOL`] after scaling both to unit max-norm.
pub fn slices_agree<T: Scalar>(a: &[T], b: &[T]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if T::EXACT {
        return a == b;
    }
    let scale = a
        .iter()
        .chain(b.iter())
        .map(Scalar::magnitude)
        .fold(0.0_f64, f64::max)
        .max(1.0);
    a.iter()
        .zip(b)
        .all(|(x, y)| (x.clone() - y.clone()).magnitude() <= FLOAT_EQ_TOL * scale)
}

/// Max-norm of a scalar sequence.
pub fn max_norm<T: Scalar>(xs: &[T]) -> f64 {
    xs.iter().map(Scalar::magnitude).fold(0.0, f64::max)
}
