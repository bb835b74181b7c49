//! Δ, Γ, the H-form and Γ2 of the random-walk Laplacian, evaluated on
//! functions known on the closed 2-ball of a vertex.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::{Rational, Scalar};

/// Function values on `ball(center, 2)`, stored against the sorted domain.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionOnBall<T> {
    pub center: usize,
    domain: Vec<usize>,
    values: Vec<T>,
}

impl<T: Scalar> FunctionOnBall<T> {
    /// Samples `f` on the 2-ball of `center`.
    pub fn new(g: &Graph, center: usize, f: impl Fn(usize) -> T) -> Result<Self> {
        let domain = g.ball(center, 2)?;
        let values = domain.iter().map(|&v| f(v)).collect();
        Ok(Self {
            center,
            domain,
            values,
        })
    }

    /// Builds from explicit `(vertex, value)` pairs, which must cover the
    /// 2-ball exactly.
    pub fn from_pairs(g: &Graph, center: usize, pairs: impl IntoIterator<Item = (usize, T)>) -> Result<Self> {
        let domain = g.ball(center, 2)?;
        let mut pairs: Vec<(usize, T)> = pairs.into_iter().collect();
        pairs.sort_by_key(|(v, _)| *v);
        if pairs.len() != domain.len() || pairs.iter().zip(&domain).any(|((v, _), d)| v != d) {
            return Err(Error::DomainMismatch(center));
        }
        Ok(Self {
            center,
            domain,
            values: pairs.into_iter().map(|(_, t)| t).collect(),
        })
    }

    pub fn domain(&self) -> &[usize] {
        &self.domain
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn get(&self, v: usize) -> Option<&T> {
        self.domain.binary_search(&v).ok().map(|i| &self.values[i])
    }

    fn at(&self, v: usize) -> T {
        self.get(v)
            .cloned()
            .unwrap_or_else(|| panic!("vertex {v} outside the 2-ball of {}", self.center))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> FunctionOnBall<U> {
        FunctionOnBall {
            center: self.center,
            domain: self.domain.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }

    /// Adds a constant to every value.
    pub fn shifted(&self, c: &T) -> Self {
        self.map(|v| v.clone() + c.clone())
    }
}

pub(crate) fn walk_mass<T: Scalar>(g: &Graph, x: usize, w: &Rational) -> T {
    T::from_rational(&(w / g.degree(x)))
}

fn check_center<T>(f: &FunctionOnBall<T>, x: usize) -> Result<()> {
    if f.center == x {
        Ok(())
    } else {
        Err(Error::DomainMismatch(x))
    }
}

fn check_isolated(g: &Graph, x: usize) -> Result<()> {
    if g.unweighted_degree(x) == 0 {
        Err(Error::IsolatedVertex(x))
    } else {
        Ok(())
    }
}

/// `Δf(v) = Σ_y m_v(y) f(y) - f(v)`; requires `N(v)` inside the domain.
fn laplacian_at<T: Scalar>(g: &Graph, f: &FunctionOnBall<T>, v: usize) -> T {
    let fv = f.at(v);
    g.neighbors(v).iter().fold(T::zero(), |acc, (y, w)| {
        acc + walk_mass::<T>(g, v, w) * f.at(*y)
    }) - fv
}

/// `Γ(f, h)(v) = ½ Σ_y m_v(y) (f(y) - f(v)) (h(y) - h(v))`.
fn gamma_at<T: Scalar>(g: &Graph, f: &FunctionOnBall<T>, h: &FunctionOnBall<T>, v: usize) -> T {
    let (fv, hv) = (f.at(v), h.at(v));
    let sum = g.neighbors(v).iter().fold(T::zero(), |acc, (y, w)| {
        acc + walk_mass::<T>(g, v, w) * (f.at(*y) - fv.clone()) * (h.at(*y) - hv.clone())
    });
    T::half() * sum
}

pub fn laplacian<T: Scalar>(g: &Graph, f: &FunctionOnBall<T>, x: usize) -> Result<T> {
    check_center(f, x)?;
    check_isolated(g, x)?;
    Ok(laplacian_at(g, f, x))
}

pub fn gamma<T: Scalar>(g: &Graph, f: &FunctionOnBall<T>, h: &FunctionOnBall<T>, x: usize) -> Result<T> {
    check_center(f, x)?;
    check_center(h, x)?;
    if f.domain != h.domain {
        return Err(Error::DomainMismatch(x));
    }
    check_isolated(g, x)?;
    Ok(gamma_at(g, f, h, x))
}

/// `Hf(x) = ¼ Σ_y m_x(y) Σ_z m_y(z) (f(x) - 2 f(y) + f(z))²`.
pub fn h_form<T: Scalar>(g: &Graph, f: &FunctionOnBall<T>, x: usize) -> Result<T> {
    check_center(f, x)?;
    check_isolated(g, x)?;
    let fx = f.at(x);
    let two = T::one() + T::one();
    let mut acc = T::zero();
    for (y, wxy) in g.neighbors(x) {
        let fy = f.at(*y);
        let inner = g.neighbors(*y).iter().fold(T::zero(), |acc, (z, wyz)| {
            let s = fx.clone() - two.clone() * fy.clone() + f.at(*z);
            acc + walk_mass::<T>(g, *y, wyz) * s.clone() * s
        });
        acc = acc + walk_mass::<T>(g, x, wxy) * inner;
    }
    Ok(T::half() * T::half() * acc)
}

/// `Γ2(f, f)(x) = Hf(x) - Γ(f, f)(x) + ½ (Δf(x))²`.
pub fn gamma2<T: Scalar>(g: &Graph, f: &FunctionOnBall<T>, x: usize) -> Result<T> {
    let h = h_form(g, f, x)?;
    let gm = gamma(g, f, f, x)?;
    let lap = laplacian(g, f, x)?;
    Ok(h - gm + T::half() * lap.clone() * lap)
}

/// `Γ2(f, f)(x)` straight from the iterated definition
/// `½ {ΔΓ(f, f) - 2 Γ(f, Δf)}(x)`, without the H-form.
pub fn gamma2_iterated<T: Scalar>(g: &Graph, f: &FunctionOnBall<T>, x: usize) -> Result<T> {
    check_center(f, x)?;
    check_isolated(g, x)?;
    let gamma_ff = |v: usize| gamma_at(g, f, f, v);
    let delta_gamma = g.neighbors(x).iter().fold(T::zero(), |acc, (y, w)| {
        acc + walk_mass::<T>(g, x, w) * gamma_ff(*y)
    }) - gamma_ff(x);

    let fx = f.at(x);
    let lap_x = laplacian_at(g, f, x);
    let cross = g.neighbors(x).iter().fold(T::zero(), |acc, (y, w)| {
        acc + walk_mass::<T>(g, x, w)
            * (f.at(*y) - fx.clone())
            * (laplacian_at(g, f, *y) - lap_x.clone())
    });
    let gamma_f_lap = T::half() * cross;
    Ok(T::half() * (delta_gamma - (T::one() + T::one()) * gamma_f_lap))
}
