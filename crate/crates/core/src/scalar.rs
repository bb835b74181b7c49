//! Scalar abstraction shared by the quadratic-form machinery.
//!
//! Graph weights and measures are always exact rationals. The Laplacian,
//! carré du champ and Γ2 forms, and the small dense linear algebra built on
//! them, are written once over [`Scalar`] so the same assembly code serves
//! exact certification (`BigRational`) and floating extremization (`f64`).

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive};

pub trait Scalar: Clone + Debug + PartialOrd + Num + Neg<Output = Self> + Send + Sync {
    /// Exact (or nearest, for floats) image of a rational.
    fn from_rational(r: &BigRational) -> Self;

    fn to_f64(&self) -> f64;

    /// Whether comparisons against zero are exact for this type.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(v)))
    }

    fn half() -> Self {
        Self::one() / (Self::one() + Self::one())
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(r: &BigRational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn from_rational(r: &BigRational) -> Self {
        ToPrimitive::to_f32(r).unwrap_or(f32::NAN)
    }

    fn to_f64(&self) -> f64 {
        f64::from(*self)
    }
}
