//! Ollivier-Ricci curvature and its triangle bounds.
//!
//! For an edge `xy` write `♯` for the number of common neighbors and
//! `d_x ∧ d_y`, `d_x ∨ d_y` for the smaller and larger endpoint degree.
//! The curvature is sandwiched as
//!
//! ```text
//! -2(1 - 1/d_x - 1/d_y)+  <=  -(A)+ - (B)+ + ♯/(d_x ∨ d_y)  <=  κ  <=  ♯/(d_x ∨ d_y)
//! ```
//!
//! with `A = 1 - 1/d_x - 1/d_y - ♯/(d_x ∧ d_y)` and `B` the same with
//! `d_x ∨ d_y`. On weighted graphs `1/d` becomes `w_xy/d`, and the triangle
//! count is replaced by sums of `max`/`min` of the two random-walk masses
//! at common neighbors.

mod batch;
mod scalar;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{common_neighbors, Graph};
use crate::measure::random_walk_measure;
use crate::transport::{wasserstein1, TransportResult};
use crate::{int, Rational};

pub use batch::{graph_report, PairOutcome, PairSelector};
pub use scalar::{scalar_report, ScalarCurvatureReport};

/// Which of the three transfer-plan regimes an edge falls in, decided by
/// the signs of the margins `A <= B` (or `A_w <= B_w`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    ANonneg,
    ANegBNonneg,
    BNeg,
}

impl CaseTag {
    fn classify(a: &Rational, b: &Rational) -> Self {
        if !a.is_negative() {
            CaseTag::ANonneg
        } else if !b.is_negative() {
            CaseTag::ANegBNonneg
        } else {
            CaseTag::BNeg
        }
    }

    pub fn label(self, weighted: bool) -> &'static str {
        match (self, weighted) {
            (CaseTag::ANonneg, false) => "A_NONNEG",
            (CaseTag::ANegBNonneg, false) => "A_NEG_B_NONNEG",
            (CaseTag::BNeg, false) => "B_NEG",
            (CaseTag::ANonneg, true) => "AW_NONNEG",
            (CaseTag::ANegBNonneg, true) => "AW_NEG_BW_NONNEG",
            (CaseTag::BNeg, true) => "BW_NEG",
        }
    }
}

/// Bounds attached to an adjacent pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeBounds {
    pub d_x: Rational,
    pub d_y: Rational,
    pub sharp: usize,
    pub case_tag: CaseTag,
    pub weighted: bool,
    pub lower_linyau: Rational,
    pub lower_triangle: Rational,
    pub upper_triangle: Rational,
    pub lower_tight: bool,
    pub upper_tight: bool,
}

/// Curvature of a vertex pair; `bounds` is present only for edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCurvatureReport {
    pub x: usize,
    pub y: usize,
    pub hop: u32,
    pub kappa: Rational,
    pub w1: Rational,
    pub transport: TransportResult,
    pub bounds: Option<EdgeBounds>,
}

fn positive_part(r: Rational) -> Rational {
    if r.is_positive() {
        r
    } else {
        Rational::zero()
    }
}

/// Curvature of `x, y` along with the hop distance and optimal transport.
pub fn ricci_detailed(g: &Graph, x: usize, y: usize) -> Result<(Rational, u32, TransportResult)> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if x == y {
        return Err(Error::SameVertex(x));
    }
    let hop = g
        .hop_distance(x, y, None)?
        .ok_or(Error::CrossComponent { x, y })?;
    let mx = random_walk_measure(g, x)?;
    let my = random_walk_measure(g, y)?;
    let t = wasserstein1(g, &mx, &my)?;
    let kappa = Rational::one() - &t.value / int(i64::from(hop));
    Ok((kappa, hop, t))
}

/// `κ(x, y) = 1 - W1(m_x, m_y) / d(x, y)`, exactly.
pub fn ricci(g: &Graph, x: usize, y: usize) -> Result<Rational> {
    ricci_detailed(g, x, y).map(|(k, _, _)| k)
}

/// `-2 (1 - w_xy/d_x - w_xy/d_y)+`.
pub fn lower_bound_linyau(g: &Graph, x: usize, y: usize) -> Result<Rational> {
    g.require_adjacent(x, y)?;
    let w = g.weight(x, y).expect("adjacent");
    let margin = Rational::one() - w / g.degree(x) - w / g.degree(y);
    Ok(-int(2) * positive_part(margin))
}

struct TriangleTerms {
    a: Rational,
    b: Rational,
    shared: Rational,
}

fn triangle_terms(g: &Graph, x: usize, y: usize) -> TriangleTerms {
    let (dx, dy) = (g.degree(x), g.degree(y));
    let common = common_neighbors(g, x, y);
    if g.is_weighted() {
        let w = g.weight(x, y).expect("adjacent");
        let base = Rational::one() - w / dx - w / dy;
        let (mut lo, mut hi) = (Rational::zero(), Rational::zero());
        for z in common {
            let p = g.weight(z, x).expect("common neighbor") / dx;
            let q = g.weight(z, y).expect("common neighbor") / dy;
            if p <= q {
                lo += p;
                hi += q;
            } else {
                lo += q;
                hi += p;
            }
        }
        TriangleTerms {
            a: &base - hi,
            b: base - &lo,
            shared: lo,
        }
    } else {
        let sharp = int(common.len() as i64);
        let (small, large) = if dx <= dy { (dx, dy) } else { (dy, dx) };
        let base = Rational::one() - dx.recip() - dy.recip();
        let shared = &sharp / large;
        TriangleTerms {
            a: &base - &sharp / small,
            b: base - &shared,
            shared,
        }
    }
}

/// `-(A)+ - (B)+ + ♯/(d_x ∨ d_y)` and the regime tag from the signs of
/// `A`, `B` (weighted: `A_w`, `B_w` with the min-mass sum).
pub fn lower_bound_triangle(g: &Graph, x: usize, y: usize) -> Result<(Rational, CaseTag)> {
    g.require_adjacent(x, y)?;
    let t = triangle_terms(g, x, y);
    let tag = CaseTag::classify(&t.a, &t.b);
    let bound = t.shared - positive_part(t.a) - positive_part(t.b);
    Ok((bound, tag))
}

/// `♯/(d_x ∨ d_y)`; on weighted graphs the shared mass `m_x ∧ m_y(G)`.
pub fn upper_bound_triangle(g: &Graph, x: usize, y: usize) -> Result<Rational> {
    g.require_adjacent(x, y)?;
    Ok(triangle_terms(g, x, y).shared)
}

/// Least triangle count `⌈k (d_x ∨ d_y)⌉` compatible with `κ(x, y) >= k`.
pub fn min_triangles_for_positive(g: &Graph, x: usize, y: usize, k: &Rational) -> Result<u64> {
    g.require_adjacent(x, y)?;
    if !k.is_positive() {
        return Err(Error::NonPositiveK(k.to_string()));
    }
    let large = g.degree(x).max(g.degree(y));
    let c = (k * large).ceil().to_integer();
    Ok(u64::try_from(c).expect("positive ceiling fits"))
}

/// Curvature of an edge with every bound and exact tightness flags.
pub fn edge_report(g: &Graph, x: usize, y: usize) -> Result<EdgeCurvatureReport> {
    g.require_adjacent(x, y)?;
    let (kappa, hop, transport) = ricci_detailed(g, x, y)?;
    let lower_linyau = lower_bound_linyau(g, x, y)?;
    let (lower_triangle, case_tag) = lower_bound_triangle(g, x, y)?;
    let upper_triangle = upper_bound_triangle(g, x, y)?;
    let bounds = EdgeBounds {
        d_x: g.degree(x).clone(),
        d_y: g.degree(y).clone(),
        sharp: common_neighbors(g, x, y).len(),
        case_tag,
        weighted: g.is_weighted(),
        lower_tight: lower_triangle == kappa,
        upper_tight: upper_triangle == kappa,
        lower_linyau,
        lower_triangle,
        upper_triangle,
    };
    Ok(EdgeCurvatureReport {
        x,
        y,
        hop,
        w1: transport.value.clone(),
        kappa,
        transport,
        bounds: Some(bounds),
    })
}

/// Report for an arbitrary pair: full bounds on edges, `κ` alone otherwise.
pub fn pair_report(g: &Graph, x: usize, y: usize) -> Result<EdgeCurvatureReport> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if g.is_adjacent(x, y) {
        return edge_report(g, x, y);
    }
    let (kappa, hop, transport) = ricci_detailed(g, x, y)?;
    Ok(EdgeCurvatureReport {
        x,
        y,
        hop,
        w1: transport.value.clone(),
        kappa,
        transport,
        bounds: None,
    })
}
