//! Closed-form lower bounds on the curvature function `K(x)` for `m = 2`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{common_neighbors, max_neighbor_degree, max_weighted_neighbor_ratio, Graph};
use crate::{int, Rational};

fn require_edges(g: &Graph, x: usize) -> Result<()> {
    g.check_vertex(x)?;
    if g.unweighted_degree(x) == 0 {
        return Err(Error::IsolatedVertex(x));
    }
    Ok(())
}

fn min_over<I: Iterator<Item = Rational>>(it: I) -> Rational {
    it.min().expect("vertex has neighbors")
}

/// `2/D_w(x) - 1`.
pub fn cd_bound_max_degree(g: &Graph, x: usize) -> Result<Rational> {
    require_edges(g, x)?;
    Ok(int(2) / max_weighted_neighbor_ratio(g, x) - Rational::one())
}

/// `t(x)/2 - 1` with `t(x) = min_{y∼x} (4/d_y + ♯(x,y)/D(x))`.
pub fn cd_bound_triangles(g: &Graph, x: usize) -> Result<Rational> {
    if g.is_weighted() {
        return Err(Error::WeightedUnsupported);
    }
    require_edges(g, x)?;
    let big_d = max_neighbor_degree(g, x);
    let t = min_over(g.neighbor_ids(x).map(|y| {
        int(4) / g.degree(y) + int(common_neighbors(g, x, y).len() as i64) / &big_d
    }));
    Ok(t / int(2) - Rational::one())
}

/// Bound under positive curvature on every edge at `x`.
///
/// `kappas` holds `κ(x, y)` for each neighbor `y`, as computed by the
/// curvature module. With `k = None` the hypothesis is `κ > 0` and the bound
/// is `5/(2D(x)) - 1`; with `k = Some(k)` it is `κ ≥ k > 0` and the bound is
/// `½ min_{y∼x}(4/d_y + ⌈k (d_x ∨ d_y)⌉/D(x)) - 1`.
pub fn cd_bound_positive_kappa(
    g: &Graph,
    x: usize,
    k: Option<&Rational>,
    kappas: &[(usize, Rational)],
) -> Result<Rational> {
    if g.is_weighted() {
        return Err(Error::WeightedUnsupported);
    }
    require_edges(g, x)?;
    if let Some(k) = k {
        if k <= &Rational::zero() {
            return Err(Error::NonPositiveK(k.to_string()));
        }
    }
    for y in g.neighbor_ids(x) {
        let Some((_, kappa)) = kappas.iter().find(|(v, _)| *v == y) else {
            return Err(Error::HypothesisViolation(format!(
                "no curvature supplied for edge ({}, {})",
                g.label(x),
                g.label(y)
            )));
        };
        let ok = match k {
            None => kappa > &Rational::zero(),
            Some(k) => kappa >= k,
        };
        if !ok {
            let need = k.map_or_else(|| "> 0".to_owned(), |k| format!(">= {k}"));
            return Err(Error::HypothesisViolation(format!(
                "kappa({}, {}) = {kappa} is not {need}",
                g.label(x),
                g.label(y)
            )));
        }
    }

    let big_d = max_neighbor_degree(g, x);
    let half = Rational::new(1.into(), 2.into());
    match k {
        None => Ok(int(5) / (int(2) * &big_d) - Rational::one()),
        Some(k) => {
            let dx = g.degree(x);
            let t = min_over(g.neighbor_ids(x).map(|y| {
                let top = dx.max(g.degree(y));
                let sharp = (k * top).ceil();
                int(4) / g.degree(y) + sharp / &big_d
            }));
            Ok(half * t - Rational::one())
        }
    }
}

/// The coarser `2/D(x) + k d_x/(2D(x)) - 1`, never above the `κ ≥ k` bound.
pub fn cd_bound_rough(g: &Graph, x: usize, k: &Rational) -> Result<Rational> {
    require_edges(g, x)?;
    let big_d = max_neighbor_degree(g, x);
    Ok(int(2) / &big_d + k * g.degree(x) / (int(2) * &big_d) - Rational::one())
}

/// `t_w(x)/2 - 1` with
/// `t_w(x) = min_{y∼x} (4w_xy/d_y + Σ_{x₁∼x,y} min(w_xy/d_y, w_xx₁/d_x₁) · w_x₁y/w_xy)`.
pub fn cd_bound_tw(g: &Graph, x: usize) -> Result<Rational> {
    require_edges(g, x)?;
    let w = |a: usize, b: usize| g.weight(a, b).expect("adjacent").clone();
    let t = min_over(g.neighbor_ids(x).map(|y| {
        let wxy = w(x, y);
        let head = int(4) * &wxy / g.degree(y);
        let tail = common_neighbors(g, x, y).into_iter().fold(Rational::zero(), |acc, x1| {
            let a = &wxy / g.degree(y);
            let b = w(x, x1) / g.degree(x1);
            acc + a.min(b) * w(x1, y) / &wxy
        });
        head + tail
    }));
    Ok(t / int(2) - Rational::one())
}
