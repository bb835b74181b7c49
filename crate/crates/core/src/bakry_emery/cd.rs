use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_traits::FromPrimitive;

use super::forms::{cd_forms, Dimension};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{psd_check, Definiteness};
use crate::{ExactFunction, FloatFunction, Rational, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub enum CdOutcome {
    /// Exact verdict on `CD(m, k)` at the center; `witness` violates it when
    /// `holds` is false.
    Verify {
        k: Rational,
        holds: bool,
        witness: Option<ExactFunction>,
    },
    /// Largest `K` with `CD(m, K)` at the center, to within `error_bound`.
    /// `witness` (with `f(x) = 0`) attains the extremal quotient.
    Optimize {
        k_opt: f64,
        error_bound: f64,
        witness: FloatFunction,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CdResult {
    pub center: usize,
    pub m: Dimension,
    pub outcome: CdOutcome,
}

impl CdResult {
    /// The verdict in verify mode.
    pub fn holds(&self) -> Option<bool> {
        match &self.outcome {
            CdOutcome::Verify { holds, .. } => Some(*holds),
            CdOutcome::Optimize { .. } => None,
        }
    }

    pub fn k_opt(&self) -> Option<f64> {
        match &self.outcome {
            CdOutcome::Optimize { k_opt, .. } => Some(*k_opt),
            CdOutcome::Verify { .. } => None,
        }
    }
}

/// Decides `Γ2(f,f)(x) - (1/m)(Δf(x))² ≥ k Γ(f,f)(x)` for every `f` exactly.
pub fn cd_verify(g: &Graph, x: usize, m: &Dimension, k: &Rational) -> Result<CdResult> {
    let forms = cd_forms::<Rational>(g, x, m)?;
    let red = forms.reduce();
    let shifted = red.q.add_scaled(&-k.clone(), &red.g);
    let (holds, witness) = match psd_check(&shifted) {
        Definiteness::PositiveSemidefinite => (true, None),
        Definiteness::Indefinite { witness } => {
            let full = red.lift(&witness);
            (false, Some(forms.function(g, &full)?))
        }
    };
    Ok(CdResult {
        center: x,
        m: m.clone(),
        outcome: CdOutcome::Verify {
            k: k.clone(),
            holds,
            witness,
        },
    })
}

/// Optimal curvature `K(x)` for dimension `m` via the smallest generalized
/// eigenvalue of the reduced pair `(Q, G)`, followed by an exact check that
/// `CD(m, K_opt - tol)` holds.
pub fn cd_optimal_k(g: &Graph, x: usize, m: &Dimension, tol: f64) -> Result<CdResult> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    let forms = cd_forms::<Rational>(g, x, m)?;
    let red = forms.reduce().map(|r| <f64 as Scalar>::from_rational(r));
    let d = red.dim();
    let scale: Vec<f64> = (0..d).map(|i| red.g.get(i, i).sqrt().recip()).collect();
    let sym = DMatrix::from_fn(d, d, |i, j| red.q.get(i, j) * scale[i] * scale[j]);

    let eig = SymmetricEigen::new(sym.clone());
    let (idx, &lambda) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .ok_or_else(|| Error::Numerical("empty reduced form".into()))?;
    let v: DVector<f64> = eig.eigenvectors.column(idx).into_owned();
    // Residual of the computed pair plus the rounding of the solver itself.
    let residual = (&sym * &v - &v * lambda).norm() / v.norm();
    let error_bound = residual + (d as f64) * f64::EPSILON * sym.norm();
    if !error_bound.is_finite() || error_bound > tol {
        return Err(Error::Numerical(format!(
            "eigenvalue error bound {error_bound:e} exceeds tolerance {tol:e}"
        )));
    }

    let floor = Rational::from_f64(lambda - tol)
        .ok_or_else(|| Error::Numerical(format!("non-finite eigenvalue {lambda}")))?;
    if cd_verify(g, x, m, &floor)?.holds() != Some(true) {
        return Err(Error::Numerical(format!(
            "CD({m}, {}) failed its exact check at vertex {x}",
            lambda - tol
        )));
    }

    let u: Vec<f64> = (0..d).map(|i| v[i] * scale[i]).collect();
    let witness = FloatFunction::from_pairs(g, x, forms.coords.iter().copied().zip(red.lift(&u)))?;

    Ok(CdResult {
        center: x,
        m: m.clone(),
        outcome: CdOutcome::Optimize {
            k_opt: lambda,
            error_bound,
            witness,
        },
    })
}
