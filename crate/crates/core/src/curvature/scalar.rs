use num_traits::One;

use super::{lower_bound_triangle, ricci, CaseTag};
use crate::error::{Error, Result};
use crate::graph::{clustering_coefficient, Graph};
use crate::{int, Rational};

/// Degree-averaged curvature at a vertex against the clustering bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarCurvatureReport {
    pub x: usize,
    pub d_x: usize,
    pub mean_kappa: Rational,
    pub c: Rational,
    /// `(d_x - 1)/d_x · c(x)`
    pub upper: Rational,
    /// `-2 + (d_x - 1)/(d_x ∨ D(x)) · c(x)`
    pub lower: Rational,
    /// Sharper lower bound, present when every incident edge shares one case.
    pub refined_lower: Option<Rational>,
    pub uniform_case: Option<CaseTag>,
}

pub fn scalar_report(g: &Graph, x: usize) -> Result<ScalarCurvatureReport> {
    g.check_vertex(x)?;
    if g.is_weighted() {
        return Err(Error::WeightedUnsupported);
    }
    let deg = g.unweighted_degree(x);
    let c = clustering_coefficient(g, x)?;
    let d = int(deg as i64);
    let big_d = g
        .neighbor_ids(x)
        .map(|y| g.unweighted_degree(y))
        .max()
        .expect("degree >= 2");
    let big_d = int(big_d as i64);
    let top = (&d).max(&big_d).clone();
    let dm1 = &d - Rational::one();

    let mut total = int(0);
    let mut tags = Vec::with_capacity(deg);
    for y in g.neighbor_ids(x) {
        total += ricci(g, x, y)?;
        tags.push(lower_bound_triangle(g, x, y)?.1);
    }
    let mean_kappa = total / &d;
    let upper = &dm1 / &d * &c;
    let lower = int(-2) + &dm1 / &top * &c;

    let uniform_case = tags
        .first()
        .copied()
        .filter(|t| tags.iter().all(|u| u == t));
    let refined_lower = uniform_case.map(|tag| match tag {
        CaseTag::ANonneg => {
            int(-2) + int(2) / &d + int(2) / &big_d + (&dm1 / &d + int(2) * &dm1 / &top) * &c
        }
        CaseTag::ANegBNonneg => int(-1) + d.recip() + big_d.recip() + int(2) * &dm1 / &top * &c,
        CaseTag::BNeg => &dm1 / &top * &c,
    });

    Ok(ScalarCurvatureReport {
        x,
        d_x: deg,
        mean_kappa,
        c,
        upper,
        lower,
        refined_lower,
        uniform_case,
    })
}
