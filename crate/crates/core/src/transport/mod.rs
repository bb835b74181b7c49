//! Exact Wasserstein-1 distances between vertex measures under the hop
//! metric, with a primal transfer plan and a dual Kantorovich potential.

mod flow;
mod oracle;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::measure::VertexMeasure;
use crate::Rational;

pub use flow::MinCostFlow;
pub use oracle::{dual_enumeration_oracle, ORACLE_SUPPORT_LIMIT};

/// Optimal transport between two measures together with its optimality
/// certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportResult {
    pub value: Rational,
    /// `(source, target, mass)` with positive mass, sorted.
    pub plan: Vec<(usize, usize, Rational)>,
    /// Integer 1-Lipschitz potential on the joint support, minimum 0.
    pub dual: BTreeMap<usize, i64>,
}

impl TransportResult {
    /// `Σ f dmu - Σ f dnu` for the stored potential.
    pub fn dual_value(&self, mu: &VertexMeasure, nu: &VertexMeasure) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (v, m) in &mu.atoms {
            acc += m * Rational::from_integer((*self.dual.get(v)?).into());
        }
        for (v, m) in &nu.atoms {
            acc -= m * Rational::from_integer((*self.dual.get(v)?).into());
        }
        Some(acc)
    }
}

/// Sorted union of the supports of `mu` and `nu`.
pub fn joint_support(mu: &VertexMeasure, nu: &VertexMeasure) -> Vec<usize> {
    let mut j: Vec<usize> = mu.support().chain(nu.support()).collect();
    j.sort_unstable();
    j.dedup();
    j
}

/// Hop distances from every vertex of `sources` to every vertex of
/// `targets`, one truncated breadth-first search per source.
pub fn pairwise_distance_matrix(g: &Graph, sources: &[usize], targets: &[usize]) -> Result<Vec<Vec<u32>>> {
    for &v in sources.iter().chain(targets) {
        g.check_vertex(v)?;
    }
    sources
        .iter()
        .map(|&s| {
            g.distances_to(s, targets, None)
                .into_iter()
                .zip(targets)
                .map(|(d, &t)| d.ok_or(Error::CrossComponent { x: s, y: t }))
                .collect()
        })
        .collect()
}

fn common_denominator(mu: &VertexMeasure, nu: &VertexMeasure) -> BigInt {
    mu.atoms
        .iter()
        .chain(&nu.atoms)
        .fold(BigInt::one(), |l, (_, m)| l.lcm(m.denom()))
}

fn scaled(mass: &Rational, scale: &BigInt) -> Result<i128> {
    let v = mass * Rational::from_integer(scale.clone());
    debug_assert!(v.is_integer());
    v.to_integer().to_i128().ok_or(Error::ScaleOverflow)
}

/// Exact `W1(mu, nu)` over the hop metric of `g`.
///
/// Masses are scaled by the least common multiple of their denominators
/// and the bipartite transportation problem (zero-cost diagonal included)
/// is solved as an integer min-cost flow. The dual potential is recovered
/// from the final residual node potentials.
pub fn wasserstein1(g: &Graph, mu: &VertexMeasure, nu: &VertexMeasure) -> Result<TransportResult> {
    if mu.atoms.is_empty() || nu.atoms.is_empty() {
        return Err(Error::EmptyMeasure);
    }
    if mu.total() != nu.total() {
        return Err(Error::Numerical(format!(
            "measures have different total mass ({} vs {})",
            mu.total(),
            nu.total()
        )));
    }
    let joint = joint_support(mu, nu);
    for &v in &joint {
        g.check_vertex(v)?;
    }
    let dist = pairwise_distance_matrix(g, &joint, &joint)?;
    let pos = |v: usize| joint.binary_search(&v).expect("vertex in joint support");

    let scale = common_denominator(mu, nu);
    let sources: Vec<(usize, i128)> = mu
        .atoms
        .iter()
        .map(|(v, m)| Ok((*v, scaled(m, &scale)?)))
        .collect::<Result<_>>()?;
    let sinks: Vec<(usize, i128)> = nu
        .atoms
        .iter()
        .map(|(v, m)| Ok((*v, scaled(m, &scale)?)))
        .collect::<Result<_>>()?;

    let (ns, nt) = (sources.len(), sinks.len());
    let (s, t) = (0, ns + nt + 1);
    let mut net = MinCostFlow::new(ns + nt + 2);
    for (i, (_, a)) in sources.iter().enumerate() {
        net.add_arc(s, 1 + i, *a, 0);
    }
    let mut arcs = Vec::with_capacity(ns * nt);
    for (i, (u, _)) in sources.iter().enumerate() {
        for (j, (v, _)) in sinks.iter().enumerate() {
            let cost = i64::from(dist[pos(*u)][pos(*v)]);
            arcs.push((i, j, net.add_arc(1 + i, 1 + ns + j, flow::INF_CAP, cost)));
        }
    }
    for (j, (_, b)) in sinks.iter().enumerate() {
        net.add_arc(1 + ns + j, t, *b, 0);
    }
    let total: i128 = sources.iter().map(|(_, a)| a).sum();
    let (sent, cost) = net.solve(s, t, total);
    if sent != total {
        return Err(Error::Numerical("transport flow is infeasible".into()));
    }

    let scale_r = Rational::from_integer(scale);
    let to_mass = |units: i128| Rational::from_integer(BigInt::from(units)) / &scale_r;
    let value = to_mass(cost);
    let mut plan: Vec<(usize, usize, Rational)> = arcs
        .iter()
        .filter_map(|&(i, j, id)| {
            let f = net.flow(id);
            (f > 0).then(|| (sources[i].0, sinks[j].0, to_mass(f)))
        })
        .collect();
    plan.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));

    // Residual potentials p satisfy p[sink] - p[source] <= d with equality
    // on used arcs. With psi = -p on sinks, the potential
    // f(z) = min_j (psi_j + d(z, j)) is 1-Lipschitz and attains the primal cost.
    let p = net.residual_potentials();
    let psi: Vec<i64> = (0..nt).map(|j| -p[1 + ns + j]).collect();
    let mut f: Vec<i64> = joint
        .iter()
        .enumerate()
        .map(|(zi, _)| {
            sinks
                .iter()
                .enumerate()
                .map(|(j, (v, _))| psi[j] + i64::from(dist[zi][pos(*v)]))
                .min()
                .expect("nonempty sinks")
        })
        .collect();
    let lowest = *f.iter().min().expect("nonempty support");
    for v in &mut f {
        *v -= lowest;
    }
    let dual = joint.iter().copied().zip(f).collect();

    Ok(TransportResult { value, plan, dual })
}

/// Why a transport certificate failed to check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanDefect {
    NonPositiveMass { source: usize, target: usize },
    SourceMarginal { vertex: usize, expected: Rational, found: Rational },
    TargetMarginal { vertex: usize, expected: Rational, found: Rational },
    CostMismatch { claimed: Rational, recomputed: Rational },
    DualMissing { vertex: usize },
    NotLipschitz { u: usize, v: usize },
    DualityGap { primal: Rational, dual: Rational },
    Unreachable { u: usize, v: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PlanVerdict {
    pub defects: Vec<PlanDefect>,
}

impl PlanVerdict {
    pub fn is_valid(&self) -> bool {
        self.defects.is_empty()
    }
}

/// Checks marginals, cost, Lipschitz continuity of the dual and zero
/// duality gap, all in exact arithmetic.
pub fn verify_plan(g: &Graph, mu: &VertexMeasure, nu: &VertexMeasure, result: &TransportResult) -> PlanVerdict {
    let mut defects = Vec::new();
    let mut joint = joint_support(mu, nu);
    joint.extend(result.plan.iter().flat_map(|(a, b, _)| [*a, *b]));
    joint.sort_unstable();
    joint.dedup();
    if joint.iter().any(|&v| v >= g.vertex_count()) {
        defects.push(PlanDefect::Unreachable { u: joint[0], v: *joint.last().unwrap() });
        return PlanVerdict { defects };
    }
    let dist: Vec<Vec<Option<u32>>> = joint.iter().map(|&s| g.distances_to(s, &joint, None)).collect();
    let pos = |v: usize| joint.binary_search(&v).unwrap();

    let mut out_mass: BTreeMap<usize, Rational> = BTreeMap::new();
    let mut in_mass: BTreeMap<usize, Rational> = BTreeMap::new();
    let mut cost = Rational::zero();
    for (a, b, m) in &result.plan {
        if !m.is_positive() {
            defects.push(PlanDefect::NonPositiveMass { source: *a, target: *b });
        }
        *out_mass.entry(*a).or_insert_with(Rational::zero) += m;
        *in_mass.entry(*b).or_insert_with(Rational::zero) += m;
        match dist[pos(*a)][pos(*b)] {
            Some(d) => cost += m * Rational::from_integer(d.into()),
            None => defects.push(PlanDefect::Unreachable { u: *a, v: *b }),
        }
    }
    for &v in &joint {
        let (expected, found) = (mu.mass(v), out_mass.get(&v).cloned().unwrap_or_else(Rational::zero));
        if expected != found {
            defects.push(PlanDefect::SourceMarginal { vertex: v, expected, found });
        }
        let (expected, found) = (nu.mass(v), in_mass.get(&v).cloned().unwrap_or_else(Rational::zero));
        if expected != found {
            defects.push(PlanDefect::TargetMarginal { vertex: v, expected, found });
        }
    }
    if cost != result.value {
        defects.push(PlanDefect::CostMismatch {
            claimed: result.value.clone(),
            recomputed: cost,
        });
    }

    let support = joint_support(mu, nu);
    let mut dual_ok = true;
    for &v in &support {
        if !result.dual.contains_key(&v) {
            defects.push(PlanDefect::DualMissing { vertex: v });
            dual_ok = false;
        }
    }
    if dual_ok {
        for (i, &u) in support.iter().enumerate() {
            for &v in &support[i + 1..] {
                let gap = (result.dual[&u] - result.dual[&v]).unsigned_abs();
                match dist[pos(u)][pos(v)] {
                    Some(d) if gap <= u64::from(d) => {}
                    Some(_) => defects.push(PlanDefect::NotLipschitz { u, v }),
                    None => defects.push(PlanDefect::Unreachable { u, v }),
                }
            }
        }
        if let Some(dual) = result.dual_value(mu, nu) {
            if dual != result.value {
                defects.push(PlanDefect::DualityGap {
                    primal: result.value.clone(),
                    dual,
                });
            }
        }
    }
    PlanVerdict { defects }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::random_walk_measure;
    use crate::{int, rat};

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::unweighted(n, &e).unwrap()
    }

    fn pair(g: &Graph, x: usize, y: usize) -> (VertexMeasure, VertexMeasure, TransportResult) {
        let mx = random_walk_measure(g, x).unwrap();
        let my = random_walk_measure(g, y).unwrap();
        let r = wasserstein1(g, &mx, &my).unwrap();
        (mx, my, r)
    }

    #[test]
    fn identical_measures_cost_nothing() {
        let g = complete(5);
        let m = random_walk_measure(&g, 0).unwrap();
        let r = wasserstein1(&g, &m, &m).unwrap();
        assert_eq!(r.value, int(0));
        assert!(r.plan.iter().all(|(a, b, _)| a == b));
        assert!(verify_plan(&g, &m, &m, &r).is_valid());
    }

    #[test]
    fn complete_graph_edges() {
        for n in 3..8 {
            let g = complete(n);
            let (mx, my, r) = pair(&g, 0, 1);
            assert_eq!(r.value, rat(1, n as i64 - 1));
            assert!(verify_plan(&g, &mx, &my, &r).is_valid());
        }
    }

    #[test]
    fn tree_edge_with_degree_three_ends() {
        // x=0 with leaves 2,3 ; y=1 with leaves 4,5
        let g = Graph::unweighted(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap();
        let (mx, my, r) = pair(&g, 0, 1);
        assert_eq!(r.value, rat(5, 3));
        assert!(verify_plan(&g, &mx, &my, &r).is_valid());
        let (mx, my, r) = pair(&g, 1, 0);
        assert_eq!(r.value, rat(5, 3));
        assert!(verify_plan(&g, &mx, &my, &r).is_valid());
    }

    #[test]
    fn perturbed_plan_is_rejected() {
        let g = complete(4);
        let (mx, my, mut r) = pair(&g, 0, 1);
        r.plan[0].2 += rat(1, 1000);
        let v = verify_plan(&g, &mx, &my, &r);
        assert!(v
            .defects
            .iter()
            .any(|d| matches!(d, PlanDefect::SourceMarginal { .. })));
    }

    #[test]
    fn bumped_dual_is_rejected() {
        let g = Graph::unweighted(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap();
        let (mx, my, mut r) = pair(&g, 0, 1);
        let v = *r.dual.keys().next().unwrap();
        *r.dual.get_mut(&v).unwrap() += 2;
        let verdict = verify_plan(&g, &mx, &my, &r);
        assert!(verdict
            .defects
            .iter()
            .any(|d| matches!(d, PlanDefect::NotLipschitz { .. })));
    }

    #[test]
    fn cross_component_and_empty() {
        let g = Graph::unweighted(4, &[(0, 1), (2, 3)]).unwrap();
        let mx = random_walk_measure(&g, 0).unwrap();
        let mz = random_walk_measure(&g, 2).unwrap();
        assert!(matches!(wasserstein1(&g, &mx, &mz), Err(Error::CrossComponent { .. })));
        let empty = VertexMeasure { base: 0, atoms: vec![] };
        assert_eq!(wasserstein1(&g, &empty, &mx), Err(Error::EmptyMeasure));
    }

    #[test]
    fn distance_matrix_examples() {
        let g = complete(4);
        assert_eq!(pairwise_distance_matrix(&g, &[0], &[0]).unwrap(), vec![vec![0]]);
        let all: Vec<usize> = (0..4).collect();
        let m = pairwise_distance_matrix(&g, &all, &all).unwrap();
        assert!(m.iter().flatten().all(|&d| d <= 1));
        let tree = Graph::unweighted(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap();
        let m = pairwise_distance_matrix(&tree, &[1, 2, 3], &[0, 4, 5]).unwrap();
        assert!(m.iter().flatten().all(|&d| (1..=3).contains(&d)));
        let two = Graph::unweighted(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(pairwise_distance_matrix(&two, &[0], &[3]).is_err());
    }

    #[test]
    fn weighted_masses_scale_exactly() {
        let g = crate::graph::parse_edge_list("a b 2\nb c 1/3\na c 5\nc d 7/2", true).unwrap();
        for (x, y, _) in g.edges().collect::<Vec<_>>() {
            let (mx, my, r) = pair(&g, x, y);
            assert!(verify_plan(&g, &mx, &my, &r).is_valid());
            let back = wasserstein1(&g, &my, &mx).unwrap();
            assert_eq!(back.value, r.value);
        }
    }
}
