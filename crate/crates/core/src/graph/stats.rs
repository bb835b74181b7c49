use num_traits::{One, Zero};

use super::Graph;
use crate::error::{Error, Result};
use crate::{rat, Rational};

/// Common neighbors of `x` and `y`, sorted, via merge of the adjacency lists.
pub fn common_neighbors(g: &Graph, x: usize, y: usize) -> Vec<usize> {
    let (a, b) = (g.neighbors(x), g.neighbors(y));
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i].0);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Number of triangles through the edge `xy`.
pub fn triangle_count(g: &Graph, x: usize, y: usize) -> Result<usize> {
    g.require_adjacent(x, y)?;
    Ok(common_neighbors(g, x, y).len())
}

/// Local clustering coefficient: realized edges among the neighbors of `x`
/// over the number of possible ones.
pub fn clustering_coefficient(g: &Graph, x: usize) -> Result<Rational> {
    g.check_vertex(x)?;
    let d = g.unweighted_degree(x);
    if d < 2 {
        return Err(Error::DegreeTooSmall {
            vertex: x,
            degree: d,
            required: 2,
        });
    }
    let total: usize = g
        .neighbor_ids(x)
        .map(|y| common_neighbors(g, x, y).len())
        .sum();
    Ok(rat(total as i64, (d * (d - 1)) as i64))
}

/// Per-vertex degree data: `d` (weighted degree), `big_d` = max neighbor
/// degree and `big_d_w` = max over neighbors of `d_y / w_yx`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSummary {
    pub d: Vec<Rational>,
    pub big_d: Vec<Rational>,
    pub big_d_w: Vec<Rational>,
}

pub fn degree_summary(g: &Graph) -> Result<DegreeSummary> {
    let n = g.vertex_count();
    let mut big_d = Vec::with_capacity(n);
    let mut big_d_w = Vec::with_capacity(n);
    for x in 0..n {
        if g.unweighted_degree(x) == 0 {
            return Err(Error::IsolatedVertex(x));
        }
        let mut m = Rational::zero();
        let mut mw = Rational::zero();
        for (y, w) in g.neighbors(x) {
            let dy = g.degree(*y);
            if *dy > m {
                m = dy.clone();
            }
            let ratio = dy / w;
            if ratio > mw {
                mw = ratio;
            }
        }
        big_d.push(m);
        big_d_w.push(mw);
    }
    Ok(DegreeSummary {
        d: (0..n).map(|x| g.degree(x).clone()).collect(),
        big_d,
        big_d_w,
    })
}

/// `D(x)` for a single vertex.
pub(crate) fn max_neighbor_degree(g: &Graph, x: usize) -> Rational {
    g.neighbor_ids(x)
        .map(|y| g.degree(y).clone())
        .max()
        .unwrap_or_else(Rational::one)
}

/// `D_w(x)` for a single vertex.
pub(crate) fn max_weighted_neighbor_ratio(g: &Graph, x: usize) -> Rational {
    g.neighbors(x)
        .iter()
        .map(|(y, w)| g.degree(*y) / w)
        .max()
        .unwrap_or_else(Rational::one)
}
