//! Brute-force Kantorovich dual, used as an independent check on the flow
//! solver. With an integer cost matrix an optimal dual can be taken integral
//! and, after a shift, valued in `0..=diameter` of the joint support, so
//! exhaustive enumeration of such functions recovers `W1` exactly.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::measure::VertexMeasure;
use crate::Rational;

pub const ORACLE_SUPPORT_LIMIT: usize = 12;

/// Plain breadth-first search over the whole component, kept separate from
/// the truncated searches of the solver.
fn bfs_all(g: &Graph, s: usize) -> Vec<Option<u32>> {
    let mut dist = vec![None; g.vertex_count()];
    dist[s] = Some(0);
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        let du = dist[u].unwrap();
        for (v, _) in g.neighbors(u) {
            if dist[*v].is_none() {
                dist[*v] = Some(du + 1);
                q.push_back(*v);
            }
        }
    }
    dist
}

/// Maximum of `Σ f dmu - Σ f dnu` over integer functions on the joint
/// support with values in `0..=radius` that are 1-Lipschitz for the hop
/// metric.
pub fn dual_enumeration_oracle(g: &Graph, mu: &VertexMeasure, nu: &VertexMeasure, radius: u32) -> Result<Rational> {
    let mut support: Vec<usize> = mu.support().chain(nu.support()).collect();
    support.sort_unstable();
    support.dedup();
    if support.len() > ORACLE_SUPPORT_LIMIT {
        return Err(Error::SupportTooLarge {
            size: support.len(),
            limit: ORACLE_SUPPORT_LIMIT,
        });
    }
    if support.is_empty() {
        return Err(Error::EmptyMeasure);
    }
    for &v in &support {
        g.check_vertex(v)?;
    }
    let k = support.len();
    let mut dist = vec![vec![0u32; k]; k];
    for (i, &u) in support.iter().enumerate() {
        let all = bfs_all(g, u);
        for (j, &v) in support.iter().enumerate() {
            dist[i][j] = all[v].ok_or(Error::CrossComponent { x: u, y: v })?;
        }
    }

    let scale = mu
        .atoms
        .iter()
        .chain(&nu.atoms)
        .fold(BigInt::one(), |l, (_, m)| l.lcm(m.denom()));
    let scale_r = Rational::from_integer(scale.clone());
    let weight: Vec<i128> = support
        .iter()
        .map(|&v| {
            ((mu.mass(v) - nu.mass(v)) * &scale_r)
                .to_integer()
                .to_i128()
                .ok_or(Error::ScaleOverflow)
        })
        .collect::<Result<_>>()?;

    let mut values = vec![0u32; k];
    let mut best = i128::MIN;
    search(0, &dist, &weight, radius, &mut values, 0, &mut best);
    Ok(Rational::new(BigInt::from(best), scale))
}

fn search(i: usize, dist: &[Vec<u32>], weight: &[i128], radius: u32, values: &mut [u32], acc: i128, best: &mut i128) {
    if i == values.len() {
        *best = (*best).max(acc);
        return;
    }
    for val in 0..=radius {
        let feasible = (0..i).all(|j| values[j].abs_diff(val) <= dist[i][j]);
        if feasible {
            values[i] = val;
            search(i + 1, dist, weight, radius, values, acc + weight[i] * i128::from(val), best);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::random_walk_measure;
    use crate::{int, rat};

    #[test]
    fn identical_measures() {
        let g = Graph::unweighted(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let m = random_walk_measure(&g, 0).unwrap();
        assert_eq!(dual_enumeration_oracle(&g, &m, &m, 2).unwrap(), int(0));
    }

    #[test]
    fn four_cycle_adjacent_pair() {
        let g = Graph::unweighted(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let mx = random_walk_measure(&g, 0).unwrap();
        let my = random_walk_measure(&g, 1).unwrap();
        assert_eq!(dual_enumeration_oracle(&g, &mx, &my, 2).unwrap(), int(1));
    }

    #[test]
    fn leaf_edge() {
        let g = Graph::unweighted(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        let mx = random_walk_measure(&g, 0).unwrap();
        let my = random_walk_measure(&g, 1).unwrap();
        assert_eq!(dual_enumeration_oracle(&g, &mx, &my, 2).unwrap(), int(1));
    }

    #[test]
    fn triangle_with_pendants() {
        // x=0, y=1, common 2, own neighbors 3 (of x) and 4 (of y)
        let g = Graph::unweighted(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 4)]).unwrap();
        let mx = random_walk_measure(&g, 0).unwrap();
        let my = random_walk_measure(&g, 1).unwrap();
        assert_eq!(dual_enumeration_oracle(&g, &mx, &my, 3).unwrap(), rat(2, 3));
    }

    #[test]
    fn support_guard() {
        let edges: Vec<(usize, usize)> = (1..14).map(|i| (0, i)).collect();
        let g = Graph::unweighted(14, &edges).unwrap();
        let m = random_walk_measure(&g, 0).unwrap();
        let d = VertexMeasure::dirac(0);
        assert!(matches!(
            dual_enumeration_oracle(&g, &m, &d, 2),
            Err(Error::SupportTooLarge { .. })
        ));
    }
}
