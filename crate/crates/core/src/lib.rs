//! Exact Ollivier-Ricci curvature on weighted graphs.
//!
//! The crate computes the curvature `κ(x, y) = 1 - W1(m_x, m_y) / d(x, y)`
//! of one-step random-walk measures by exact min-cost flow, evaluates the
//! triangle and clustering-coefficient bounds around it, and certifies
//! Bakry-Émery curvature-dimension inequalities `CD(m, K)` with exact
//! rational PSD tests.
//!
//! Graph weights, measures, transport values and all bounds are
//! [`Rational`]s. The Γ-calculus and its quadratic forms are generic over
//! [`Scalar`], instantiated as [`ExactForms`] for certification and
//! [`FloatForms`] for eigenvalue extremization.

pub mod bakry_emery;
pub mod curvature;
pub mod error;
pub mod generators;
pub mod graph;
pub mod linalg;
pub mod measure;
pub mod scalar;
pub mod selfcheck;
pub mod transport;

pub use error::{Error, Result};
pub use graph::Graph;
pub use scalar::Scalar;

/// Exact arbitrary-precision rational, the number type of every reported value.
pub type Rational = num_rational::BigRational;

pub type ExactFunction = bakry_emery::FunctionOnBall<Rational>;
pub type FloatFunction = bakry_emery::FunctionOnBall<f64>;
pub type ExactForms = bakry_emery::CdQuadraticForms<Rational>;
pub type FloatForms = bakry_emery::CdQuadraticForms<f64>;

/// `numer / denom` as a [`Rational`].
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}

/// Integer `v` as a [`Rational`].
pub fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}
