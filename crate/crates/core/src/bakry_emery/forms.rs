use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::function::{walk_mass, FunctionOnBall};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::SymMatrix;
use crate::{Rational, Scalar};

/// Dimension parameter `m ∈ [1, ∞]` of a curvature-dimension inequality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dimension {
    Finite(Rational),
    Infinite,
}

impl Dimension {
    pub fn finite(m: Rational) -> Result<Self> {
        if m < Rational::one() {
            return Err(Error::InvalidDimension(m.to_string()));
        }
        Ok(Self::Finite(m))
    }

    pub fn integer(m: i64) -> Result<Self> {
        Self::finite(crate::int(m))
    }

    /// `1/m`, zero for `m = ∞`.
    pub fn reciprocal(&self) -> Rational {
        match self {
            Self::Finite(m) => m.recip(),
            Self::Infinite => Rational::zero(),
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(m) => write!(f, "{m}"),
            Self::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Dimension {
    type Err = Error;

    /// Accepts `inf`, `infinity`, `∞`, integers, `p/q` and decimals.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if matches!(t.to_ascii_lowercase().as_str(), "inf" | "infinity" | "∞") {
            return Ok(Self::Infinite);
        }
        let m = crate::graph::parse_weight(t).ok_or_else(|| Error::InvalidDimension(s.to_owned()))?;
        Self::finite(m)
    }
}

/// The quadratic forms `Q(f) = Γ2(f,f)(x) - (1/m)(Δf(x))²` and
/// `G(f) = Γ(f,f)(x)` in the coordinates `coords`: the center first, then its
/// neighbors, then the sphere of radius 2, each block in index order.
#[derive(Debug, Clone, PartialEq)]
pub struct CdQuadraticForms<T> {
    pub center: usize,
    pub coords: Vec<usize>,
    pub neighbor_count: usize,
    pub q: SymMatrix<T>,
    pub g: SymMatrix<T>,
    pub m: Dimension,
}

impl<T: Scalar> CdQuadraticForms<T> {
    /// Coordinate vector of `f` in `coords` order.
    pub fn vector(&self, f: &FunctionOnBall<T>) -> Result<Vec<T>> {
        if f.center != self.center {
            return Err(Error::DomainMismatch(self.center));
        }
        self.coords
            .iter()
            .map(|v| f.get(*v).cloned().ok_or(Error::DomainMismatch(self.center)))
            .collect()
    }

    /// The function with coordinate vector `v`.
    pub fn function(&self, graph: &Graph, v: &[T]) -> Result<FunctionOnBall<T>> {
        FunctionOnBall::from_pairs(graph, self.center, self.coords.iter().copied().zip(v.iter().cloned()))
    }

    pub fn outer_range(&self) -> std::ops::Range<usize> {
        1 + self.neighbor_count..self.coords.len()
    }
}

/// Center, neighbors, then the sphere of radius 2.
pub(crate) fn ball_coordinates(g: &Graph, x: usize) -> Result<(Vec<usize>, usize)> {
    let ball = g.ball(x, 2)?;
    let mut coords = vec![x];
    coords.extend(g.neighbor_ids(x));
    let d = coords.len() - 1;
    coords.extend(ball.into_iter().filter(|v| *v != x && !g.is_adjacent(x, *v)));
    Ok((coords, d))
}

/// Assembles `Q` and `G` at `x` from the bilinear expansions of the H-form,
/// Γ and Δ.
pub fn cd_forms<T: Scalar>(g: &Graph, x: usize, m: &Dimension) -> Result<CdQuadraticForms<T>> {
    g.check_vertex(x)?;
    if g.unweighted_degree(x) == 0 {
        return Err(Error::IsolatedVertex(x));
    }
    let (coords, d) = ball_coordinates(g, x)?;
    let pos = |v: usize| coords.iter().position(|c| *c == v).expect("vertex in 2-ball");
    let n = coords.len();
    let one = T::one();
    let two = one.clone() + one.clone();
    let quarter = T::half() * T::half();

    let mut q = SymMatrix::zeros(n);
    let mut gm = SymMatrix::zeros(n);
    let mut lap = vec![(0usize, -one.clone())];

    for (y, wxy) in g.neighbors(x) {
        let my: T = walk_mass(g, x, wxy);
        let py = pos(*y);
        gm.add_outer(&(T::half() * my.clone()), &[(0, -one.clone()), (py, one.clone())]);
        lap.push((py, my.clone()));
        for (z, wyz) in g.neighbors(*y) {
            let mz: T = walk_mass(g, *y, wyz);
            let coef = quarter.clone() * my.clone() * mz;
            q.add_outer(&coef, &[(0, one.clone()), (py, -two.clone()), (pos(*z), one.clone())]);
        }
    }

    let lap_coef = T::half() - T::from_rational(&m.reciprocal());
    q.add_outer(&lap_coef, &lap);
    let q = q.add_scaled(&-one, &gm);

    Ok(CdQuadraticForms {
        center: x,
        coords,
        neighbor_count: d,
        q,
        g: gm,
        m: m.clone(),
    })
}

/// The forms restricted to functions with `f(x) = 0`, with the outer ring
/// minimized out: `q` is the Schur complement on the neighbor block and `g`
/// is `diag(½ m_x(y))`. `lift` maps a neighbor vector back to the full
/// 2-ball minimizer of `Q`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedForms<T> {
    pub q: SymMatrix<T>,
    pub g: SymMatrix<T>,
    /// Row `z` holds `-Q_zz⁻¹ Q_zN` for each outer coordinate `z`.
    lift: Vec<Vec<T>>,
}

impl<T: Scalar> ReducedForms<T> {
    pub fn dim(&self) -> usize {
        self.q.dim()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U + Copy) -> ReducedForms<U> {
        ReducedForms {
            q: self.q.map(f),
            g: self.g.map(f),
            lift: self.lift.iter().map(|row| row.iter().map(f).collect()).collect(),
        }
    }

    /// Full coordinate vector `[0, u, outer(u)]`.
    pub fn lift(&self, u: &[T]) -> Vec<T> {
        let mut v = Vec::with_capacity(1 + u.len() + self.lift.len());
        v.push(T::zero());
        v.extend(u.iter().cloned());
        for row in &self.lift {
            v.push(row.iter().zip(u).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone()));
        }
        v
    }
}

impl<T: Scalar> CdQuadraticForms<T> {
    /// Only the H-form touches outer coordinates, and each outer vertex `z`
    /// appears in its own squares, so `Q` is diagonal and positive there and
    /// the elimination is a rank-one update per outer vertex.
    pub fn reduce(&self) -> ReducedForms<T> {
        let d = self.neighbor_count;
        let nb: Vec<usize> = (1..=d).collect();
        let mut q = self.q.submatrix(&nb);
        let g = self.g.submatrix(&nb);
        let mut lift = Vec::new();
        for z in self.outer_range() {
            let qzz = self.q.get(z, z).clone();
            debug_assert!(qzz > T::zero());
            let col: Vec<(usize, T)> = nb
                .iter()
                .enumerate()
                .map(|(a, &i)| (a, self.q.get(z, i).clone()))
                .filter(|(_, t)| !t.is_zero())
                .collect();
            q.add_outer(&(-(T::one() / qzz.clone())), &col);
            let mut row = vec![T::zero(); d];
            for (a, t) in col {
                row[a] = -(t / qzz.clone());
            }
            lift.push(row);
        }
        ReducedForms { q, g, lift }
    }
}
