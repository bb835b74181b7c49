//! Property checks run against a single input graph.
//!
//! Each check walks the graph, counts the instances it examined and stops at
//! the first counterexample, which it describes in `detail`.

use num_traits::{One, Zero};

use crate::bakry_emery::{
    cd_bound_positive_kappa, cd_bound_triangles, cd_bound_max_degree, cd_bound_tw, cd_verify, gamma2,
    gamma2_iterated, Dimension, FunctionOnBall,
};
use crate::curvature::{edge_report, scalar_report, CaseTag, EdgeCurvatureReport};
use crate::error::Result;
use crate::graph::Graph;
use crate::measure::{intersection_mass, random_walk_measure, total_variation_overlap};
use crate::transport::{dual_enumeration_oracle, joint_support, verify_plan, ORACLE_SUPPORT_LIMIT};
use crate::{int, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub checked: usize,
    pub detail: Option<String>,
}

struct Check {
    name: &'static str,
    checked: usize,
    failure: Option<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checked: 0,
            failure: None,
        }
    }

    /// Records one instance; returns false once a failure is recorded.
    fn expect(&mut self, ok: bool, detail: impl FnOnce() -> String) -> bool {
        if self.failure.is_some() {
            return false;
        }
        self.checked += 1;
        if !ok {
            self.failure = Some(detail());
        }
        ok
    }

    fn error(&mut self, e: crate::Error) {
        if self.failure.is_none() {
            self.failure = Some(e.to_string());
        }
    }

    fn finish(self) -> PropertyOutcome {
        PropertyOutcome {
            name: self.name,
            passed: self.failure.is_none(),
            checked: self.checked,
            detail: self.failure,
        }
    }
}

fn run(name: &'static str, body: impl FnOnce(&mut Check) -> Result<()>) -> PropertyOutcome {
    let mut c = Check::new(name);
    if let Err(e) = body(&mut c) {
        c.error(e);
    }
    c.finish()
}

fn edge_name(g: &Graph, x: usize, y: usize) -> String {
    format!("({}, {})", g.label(x), g.label(y))
}

/// A fixed, non-symmetric test function on the 2-ball of `x`.
fn probe(g: &Graph, x: usize, salt: i64) -> Result<FunctionOnBall<Rational>> {
    FunctionOnBall::new(g, x, |v| {
        let v = v as i64;
        rat((v * 7 + salt * 3) % 11 - 5, 1 + (v + salt) % 4)
    })
}

/// Runs every property applicable to `g`. Vertex-local checks skip isolated
/// vertices; pair checks cover edges only.
pub fn run_selfcheck(g: &Graph) -> Vec<PropertyOutcome> {
    let active: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.unweighted_degree(v) > 0).collect();
    let edges: Vec<(usize, usize)> = g.edges().map(|(u, v, _)| (u, v)).collect();
    let reports: Vec<Result<EdgeCurvatureReport>> = edges.iter().map(|&(x, y)| edge_report(g, x, y)).collect();
    let mut out = Vec::new();

    out.push(run("hop_metric", |c| {
        let n = g.vertex_count().min(40);
        for x in 0..n {
            for y in 0..n {
                let dxy = g.hop_distance(x, y, None)?;
                let ok = dxy == g.hop_distance(y, x, None)? && (dxy == Some(0)) == (x == y);
                if !c.expect(ok, || format!("symmetry or identity fails at {}", edge_name(g, x, y))) {
                    return Ok(());
                }
                for z in 0..n {
                    if let (Some(a), Some(b), Some(t)) =
                        (g.hop_distance(x, z, None)?, g.hop_distance(z, y, None)?, dxy)
                    {
                        if !c.expect(t <= a + b, || format!("triangle inequality fails via {}", g.label(z))) {
                            return Ok(());
                        }
                    }
                }
            }
        }
        Ok(())
    }));

    out.push(run("measure_mass", |c| {
        for &x in &active {
            let m = random_walk_measure(g, x)?;
            c.expect(m.total().is_one(), || format!("m_{} sums to {}", g.label(x), m.total()));
        }
        Ok(())
    }));

    out.push(run("overlap_equals_intersection_mass", |c| {
        for &(x, y) in &edges {
            let a = total_variation_overlap(&random_walk_measure(g, x)?, &random_walk_measure(g, y)?);
            let b = intersection_mass(g, x, y)?;
            c.expect(a == b, || format!("{}: {a} vs {b}", edge_name(g, x, y)));
        }
        Ok(())
    }));

    out.push(run("duality_certificate", |c| {
        for (r, &(x, y)) in reports.iter().zip(&edges) {
            let r = r.as_ref().map_err(Clone::clone)?;
            let (mx, my) = (random_walk_measure(g, x)?, random_walk_measure(g, y)?);
            let verdict = verify_plan(g, &mx, &my, &r.transport);
            c.expect(verdict.is_valid(), || format!("{}: {:?}", edge_name(g, x, y), verdict.defects));
        }
        Ok(())
    }));

    out.push(run("oracle_equivalence", |c| {
        for (r, &(x, y)) in reports.iter().zip(&edges) {
            let r = r.as_ref().map_err(Clone::clone)?;
            let (mx, my) = (random_walk_measure(g, x)?, random_walk_measure(g, y)?);
            if joint_support(&mx, &my).len() > ORACLE_SUPPORT_LIMIT {
                continue;
            }
            let o = dual_enumeration_oracle(g, &mx, &my, 3)?;
            c.expect(o == r.w1, || format!("{}: oracle {o}, flow {}", edge_name(g, x, y), r.w1));
        }
        Ok(())
    }));

    out.push(run("bound_sandwich", |c| {
        for r in &reports {
            let r = r.as_ref().map_err(Clone::clone)?;
            let b = r.bounds.as_ref().expect("edges carry bounds");
            let ok = b.lower_linyau <= b.lower_triangle
                && b.lower_triangle <= r.kappa
                && r.kappa <= b.upper_triangle
                && b.upper_triangle <= Rational::one()
                && (b.case_tag != CaseTag::BNeg || r.kappa == b.upper_triangle);
            c.expect(ok, || {
                format!(
                    "{}: {} <= {} <= {} <= {} ({})",
                    edge_name(g, r.x, r.y),
                    b.lower_linyau,
                    b.lower_triangle,
                    r.kappa,
                    b.upper_triangle,
                    b.case_tag.label(b.weighted)
                )
            });
        }
        Ok(())
    }));

    if g.is_tree() {
        out.push(run("tree_exactness", |c| {
            for r in &reports {
                let r = r.as_ref().map_err(Clone::clone)?;
                let b = r.bounds.as_ref().expect("edges carry bounds");
                c.expect(r.kappa == b.lower_linyau, || {
                    format!("{}: kappa {} vs {}", edge_name(g, r.x, r.y), r.kappa, b.lower_linyau)
                });
            }
            Ok(())
        }));
    }

    out.push(run("gamma2_identity", |c| {
        for &x in &active {
            for salt in 0..3 {
                let f = probe(g, x, salt)?;
                let (a, b) = (gamma2(g, &f, x)?, gamma2_iterated(g, &f, x)?);
                c.expect(a == b, || format!("vertex {}: {a} vs {b}", g.label(x)));
            }
        }
        Ok(())
    }));

    out.push(run("cd_closed_form_bounds", |c| {
        let two = Dimension::integer(2)?;
        for &x in &active {
            let mut bounds = vec![("2/D_w - 1", cd_bound_max_degree(g, x)?), ("t_w/2 - 1", cd_bound_tw(g, x)?)];
            if !g.is_weighted() {
                bounds.push(("t/2 - 1", cd_bound_triangles(g, x)?));
                let kappas: Vec<(usize, Rational)> = reports
                    .iter()
                    .filter_map(|r| r.as_ref().ok())
                    .filter(|r| r.x == x || r.y == x)
                    .map(|r| (if r.x == x { r.y } else { r.x }, r.kappa.clone()))
                    .collect();
                if let Some(k) = kappas.iter().map(|(_, k)| k.clone()).min() {
                    if k > Rational::zero() {
                        bounds.push(("kappa > 0", cd_bound_positive_kappa(g, x, None, &kappas)?));
                        bounds.push(("kappa >= k", cd_bound_positive_kappa(g, x, Some(&k), &kappas)?));
                    }
                }
            }
            for (name, k) in bounds {
                let holds = cd_verify(g, x, &two, &k)?.holds() == Some(true);
                if !c.expect(holds, || format!("vertex {}: CD(2, {k}) from {name} fails", g.label(x))) {
                    return Ok(());
                }
            }
        }
        Ok(())
    }));

    if !g.is_weighted() {
        out.push(run("scalar_sandwich", |c| {
            for &x in active.iter().filter(|&&x| g.unweighted_degree(x) >= 2) {
                let r = scalar_report(g, x)?;
                let refined_ok = r.refined_lower.as_ref().map_or(true, |l| l <= &r.mean_kappa);
                let ok = r.lower <= r.mean_kappa && r.mean_kappa <= r.upper && refined_ok;
                c.expect(ok, || {
                    format!("vertex {}: {} <= {} <= {}", g.label(x), r.lower, r.mean_kappa, r.upper)
                });
            }
            Ok(())
        }));
    }

    out.push(run("diameter_consistency", |c| {
        let kmin = reports.iter().filter_map(|r| r.as_ref().ok()).map(|r| r.kappa.clone()).min();
        if let (Some(k), true) = (kmin, g.is_connected()) {
            if k > Rational::zero() {
                let diam = int(i64::from(g.diameter().unwrap_or(0)));
                c.expect(diam <= int(2) / &k, || format!("diameter {diam} exceeds 2/{k}"));
            }
        }
        Ok(())
    }));

    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::generate_family;

    #[test]
    fn corpus_passes() {
        for spec in ["complete:5", "cycle:7", "tree:random:15:2", "gnp:12:0.4:1", "wgnp:10:0.5:3", "star:4"] {
            let g = generate_family(spec).unwrap();
            for outcome in run_selfcheck(&g) {
                assert!(outcome.passed, "{spec}: {} {:?}", outcome.name, outcome.detail);
            }
        }
    }

    #[test]
    fn tree_check_only_on_trees() {
        let g = generate_family("cycle:5").unwrap();
        assert!(run_selfcheck(&g).iter().all(|o| o.name != "tree_exactness"));
        let t = generate_family("path:5").unwrap();
        assert!(run_selfcheck(&t).iter().any(|o| o.name == "tree_exactness"));
    }
}
