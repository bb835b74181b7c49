//! One-step random-walk measures `m_x(y) = w_xy / d_x`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{common_neighbors, Graph};
use crate::Rational;

/// Finitely supported probability measure with exact masses, atoms sorted
/// by vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMeasure {
    pub base: usize,
    pub atoms: Vec<(usize, Rational)>,
}

impl VertexMeasure {
    /// Builds a measure from arbitrary atoms, merging repeats and dropping
    /// zero masses. The total is not forced to one.
    pub fn from_atoms(base: usize, atoms: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut atoms: Vec<(usize, Rational)> = atoms.into_iter().collect();
        atoms.sort_by_key(|(v, _)| *v);
        let mut merged: Vec<(usize, Rational)> = Vec::with_capacity(atoms.len());
        for (v, m) in atoms {
            match merged.last_mut() {
                Some((last, acc)) if *last == v => *acc += m,
                _ => merged.push((v, m)),
            }
        }
        merged.retain(|(_, m)| !m.is_zero());
        Self { base, atoms: merged }
    }

    /// Point mass at `v`.
    pub fn dirac(v: usize) -> Self {
        Self {
            base: v,
            atoms: vec![(v, Rational::from_integer(1.into()))],
        }
    }

    pub fn mass(&self, v: usize) -> Rational {
        self.atoms
            .binary_search_by_key(&v, |(u, _)| *u)
            .map(|i| self.atoms[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn total(&self) -> Rational {
        self.atoms.iter().map(|(_, m)| m).sum()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.atoms.iter().map(|(v, _)| *v)
    }
}

pub fn random_walk_measure(g: &Graph, x: usize) -> Result<VertexMeasure> {
    g.check_vertex(x)?;
    if g.unweighted_degree(x) == 0 {
        return Err(Error::IsolatedVertex(x));
    }
    let d = g.degree(x);
    Ok(VertexMeasure {
        base: x,
        atoms: g.neighbors(x).iter().map(|(y, w)| (*y, w / d)).collect(),
    })
}

/// Mass shared by `m_x` and `m_y` for adjacent `x, y`: the sum over common
/// neighbors of `min(w_{x1 x} / d_x, w_{x1 y} / d_y)`.
pub fn intersection_mass(g: &Graph, x: usize, y: usize) -> Result<Rational> {
    g.require_adjacent(x, y)?;
    let (dx, dy) = (g.degree(x), g.degree(y));
    Ok(common_neighbors(g, x, y)
        .into_iter()
        .map(|z| {
            let a = g.weight(z, x).expect("common neighbor") / dx;
            let b = g.weight(z, y).expect("common neighbor") / dy;
            a.min(b)
        })
        .sum())
}

/// `Σ_z min(mu(z), nu(z))`, computed by merging the atom lists.
pub fn total_variation_overlap(mu: &VertexMeasure, nu: &VertexMeasure) -> Rational {
    let (a, b) = (&mu.atoms, &nu.atoms);
    let (mut i, mut j) = (0, 0);
    let mut acc = Rational::zero();
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc += (&a[i].1).min(&b[j].1);
                i += 1;
                j += 1;
            }
        }
    }
    acc
}
