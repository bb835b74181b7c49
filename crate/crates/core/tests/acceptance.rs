//! Acceptance suite: prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails or overruns its time budget.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use ricci_core::bakry_emery::{
    cd_bound_positive_kappa, cd_bound_rough, cd_bound_triangles, cd_bound_max_degree, cd_bound_tw, cd_optimal_k, cd_verify,
    gamma, gamma2, gamma2_iterated, laplacian, Dimension, FunctionOnBall,
};
use ricci_core::curvature::{graph_report, scalar_report, CaseTag, EdgeCurvatureReport, PairSelector};
use ricci_core::generators::generate_family;
use ricci_core::measure::random_walk_measure;
use ricci_core::transport::{dual_enumeration_oracle, joint_support, verify_plan, wasserstein1};
use ricci_core::{int, rat, Graph, Rational};

type Verdict = Result<String, String>;

/// Every transport computed by the suite passes through here.
struct Certificates {
    checked: AtomicUsize,
    failures: Mutex<Vec<String>>,
}

static CERTS: Certificates = Certificates {
    checked: AtomicUsize::new(0),
    failures: Mutex::new(Vec::new()),
};

fn certify(g: &Graph, r: &EdgeCurvatureReport) {
    let mx = random_walk_measure(g, r.x).unwrap();
    let my = random_walk_measure(g, r.y).unwrap();
    let verdict = verify_plan(g, &mx, &my, &r.transport);
    let gap_free = r.transport.dual_value(&mx, &my).as_ref() == Some(&r.w1);
    CERTS.checked.fetch_add(1, Ordering::Relaxed);
    if !verdict.is_valid() || !gap_free {
        CERTS
            .failures
            .lock()
            .unwrap()
            .push(format!("({}, {}): {:?}", g.label(r.x), g.label(r.y), verdict.defects));
    }
}

fn edge_reports(g: &Graph) -> Vec<EdgeCurvatureReport> {
    graph_report(g, &PairSelector::Edges, None)
        .into_iter()
        .map(|o| {
            let r = o.result.unwrap_or_else(|e| panic!("edge ({}, {}): {e}", o.x, o.y));
            certify(g, &r);
            r
        })
        .collect()
}

fn family(spec: &str) -> Graph {
    generate_family(spec).unwrap_or_else(|e| panic!("{e}"))
}

fn degree(g: &Graph, v: usize) -> Rational {
    g.degree(v).clone()
}

fn pos(r: Rational) -> Rational {
    if r.is_positive() {
        r
    } else {
        Rational::zero()
    }
}

/// Connected `G(n, p)` graphs, cycling through `ps`, with `n` drawn from
/// `sizes`.
fn connected_gnp(count: usize, sizes: std::ops::RangeInclusive<usize>, ps: &[&str], weighted: bool, seed: u64) -> Vec<(String, Graph)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut s = 0u64;
    while out.len() < count {
        let p = ps[out.len() % ps.len()];
        let n = rng.gen_range(sizes.clone());
        let kind = if weighted { "wgnp" } else { "gnp" };
        let spec = format!("{kind}:{n}:{p}:{s}");
        s += 1;
        let g = family(&spec);
        if g.is_connected() && g.edge_count() > 0 {
            out.push((spec, g));
        }
    }
    out
}

fn er_corpus() -> Vec<(String, Graph)> {
    connected_gnp(100, 8..=50, &["0.1", "0.3", "0.6"], false, 3)
}

fn small_corpus() -> Vec<(String, Graph)> {
    connected_gnp(240, 2..=8, &["0.3", "0.5", "0.7", "0.9"], false, 5)
}

fn weighted_corpus() -> Vec<(String, Graph)> {
    connected_gnp(50, 4..=30, &["0.2", "0.4", "0.7"], true, 7)
}

fn c1_complete_graphs() -> Verdict {
    let mut edges = 0;
    for n in 2..=12i64 {
        let g = family(&format!("complete:{n}"));
        let expected = rat(n - 2, n - 1);
        for r in edge_reports(&g) {
            let b = r.bounds.as_ref().unwrap();
            if r.kappa != expected || b.lower_triangle != expected || b.upper_triangle != expected {
                return Err(format!(
                    "K_{n} ({}, {}): kappa {} lower {} upper {}",
                    r.x, r.y, r.kappa, b.lower_triangle, b.upper_triangle
                ));
            }
            edges += 1;
        }
    }
    Ok(format!("{edges} edges of K_2..K_12"))
}

fn c2_trees() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut edges, mut leaf_edges) = (0, 0);
    for seed in 0..50 {
        let n = rng.gen_range(2..=200);
        let g = family(&format!("tree:random:{n}:{seed}"));
        assert!(g.is_tree());
        for r in edge_reports(&g) {
            let (dx, dy) = (degree(&g, r.x), degree(&g, r.y));
            let expected = int(-2) * pos(Rational::one() - dx.recip() - dy.recip());
            if r.kappa != expected {
                return Err(format!("tree {seed} ({}, {}): kappa {} expected {expected}", r.x, r.y, r.kappa));
            }
            if dx.is_one() || dy.is_one() {
                if !r.kappa.is_zero() {
                    return Err(format!("leaf edge with kappa {}", r.kappa));
                }
                leaf_edges += 1;
            }
            edges += 1;
        }
    }
    Ok(format!("{edges} edges in 50 trees, {leaf_edges} leaf edges"))
}

fn c3_sandwich(corpus: &[(String, Graph)]) -> Verdict {
    let results: Vec<Result<(usize, usize), String>> = corpus
        .par_iter()
        .map(|(spec, g)| {
            let mut bneg = 0;
            let reports = edge_reports(g);
            for r in &reports {
                let b = r.bounds.as_ref().unwrap();
                let ok = b.lower_linyau <= b.lower_triangle
                    && b.lower_triangle <= r.kappa
                    && r.kappa <= b.upper_triangle
                    && b.upper_triangle <= Rational::one();
                if !ok {
                    return Err(format!("{spec} ({}, {}): sandwich fails", r.x, r.y));
                }
                if b.case_tag == CaseTag::BNeg {
                    bneg += 1;
                    if r.kappa != b.upper_triangle {
                        return Err(format!("{spec} ({}, {}): B_NEG but kappa != upper", r.x, r.y));
                    }
                }
            }
            Ok((reports.len(), bneg))
        })
        .collect();
    let (mut edges, mut bneg) = (0, 0);
    for r in results {
        let (e, b) = r?;
        edges += e;
        bneg += b;
    }
    Ok(format!("{edges} edges in {} graphs, {bneg} in case B_NEG", corpus.len()))
}

fn c4_certificates() -> Verdict {
    let checked = CERTS.checked.load(Ordering::Relaxed);
    let failures = CERTS.failures.lock().unwrap();
    if checked == 0 {
        return Err("no transport was certified".into());
    }
    match failures.first() {
        None => Ok(format!("{checked} transport plans with exact dual certificates")),
        Some(f) => Err(format!("{} of {checked} certificates failed, first {f}", failures.len())),
    }
}

fn c5_oracle(corpus: &[(String, Graph)]) -> Verdict {
    let mut pairs = 0;
    for (spec, g) in corpus {
        for r in edge_reports(g) {
            let mx = random_walk_measure(g, r.x).unwrap();
            let my = random_walk_measure(g, r.y).unwrap();
            let support = joint_support(&mx, &my);
            let radius = support
                .iter()
                .flat_map(|&a| support.iter().map(move |&b| (a, b)))
                .map(|(a, b)| g.hop_distance(a, b, None).unwrap().unwrap())
                .max()
                .unwrap();
            let oracle = dual_enumeration_oracle(g, &mx, &my, radius).unwrap();
            if oracle != r.w1 {
                return Err(format!("{spec} ({}, {}): flow {} oracle {oracle}", r.x, r.y, r.w1));
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} adjacent pairs in {} graphs with at most 8 vertices", corpus.len()))
}

fn random_function(g: &Graph, x: usize, rng: &mut ChaCha8Rng) -> FunctionOnBall<Rational> {
    let values: Vec<Rational> = (0..g.vertex_count())
        .map(|_| rat(rng.gen_range(-20..=20), rng.gen_range(1..=6)))
        .collect();
    FunctionOnBall::new(g, x, |v| values[v].clone()).unwrap()
}

fn c6_gamma2_identity() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut evaluations = 0;
    for seed in 0..50 {
        let n = rng.gen_range(3..=12);
        let spec = if seed % 5 == 4 { format!("wgnp:{n}:0.5:{seed}") } else { format!("gnp:{n}:0.5:{seed}") };
        let g = family(&spec);
        for _ in 0..20 {
            for x in (0..n).filter(|&x| g.unweighted_degree(x) > 0) {
                let f = random_function(&g, x, &mut rng);
                let (a, b) = (gamma2(&g, &f, x).unwrap(), gamma2_iterated(&g, &f, x).unwrap());
                if a != b {
                    return Err(format!("{spec} vertex {x}: {a} vs {b}"));
                }
                evaluations += 1;
            }
        }
    }

    for n in 3..=10i64 {
        let g = family(&format!("complete:{n}"));
        let pair_sum = |f: &FunctionOnBall<Rational>| {
            let mut s = Rational::zero();
            for a in 1..n as usize {
                for b in a + 1..n as usize {
                    let d = f.get(a).unwrap() - f.get(b).unwrap();
                    s += &d * &d;
                }
            }
            s / int((n - 1) * (n - 1))
        };
        let residual = |f: &FunctionOnBall<Rational>| {
            let lap = laplacian(&g, f, 0).unwrap();
            gamma2(&g, f, 0).unwrap() - rat(1, 2) * &lap * &lap - rat(4 - n, 2 * (n - 1)) * gamma(&g, f, f, 0).unwrap()
        };
        for _ in 0..20 {
            let f = random_function(&g, 0, &mut rng);
            if residual(&f) != pair_sum(&f) {
                return Err(format!("K_{n}: residual {} vs pair sum {}", residual(&f), pair_sum(&f)));
            }
        }
        let bar = FunctionOnBall::new(&g, 0, |v| if v == 0 { int(2) } else { int(1) }).unwrap();
        if !pair_sum(&bar).is_zero() || !residual(&bar).is_zero() || gamma(&g, &bar, &bar, 0).unwrap().is_zero() {
            return Err(format!("K_{n}: the extremal function does not annihilate the pair term"));
        }
    }
    Ok(format!("{evaluations} exact evaluations on 50 graphs; K_3..K_10 identity and extremal function"))
}

fn cd_corpus() -> Vec<(String, Graph)> {
    let mut specs: Vec<String> = Vec::new();
    specs.extend((2..=8).map(|n| format!("complete:{n}")));
    specs.extend((4..=8).map(|n| format!("cycle:{n}")));
    specs.extend((3..=6).map(|n| format!("path:{n}")));
    specs.extend((2..=6).map(|n| format!("star:{n}")));
    specs.push("regular-tree:3:3".into());
    specs.push("regular-tree:4:2".into());
    specs.extend((0..6).map(|s| format!("tree:random:25:{s}")));
    specs.extend((0..12).map(|s| format!("gnp:{}:0.8:{s}", 5 + s % 8)));
    specs.extend((0..12).map(|s| format!("gnp:{}:0.4:{s}", 8 + s)));
    specs.extend((0..10).map(|s| format!("wgnp:{}:0.5:{s}", 5 + s)));
    specs.extend((0..6).map(|s| format!("wtree:15:{s}")));
    let mut out: Vec<(String, Graph)> = specs.into_iter().map(|s| {
        let g = family(&s);
        (s, g)
    }).collect();
    out.extend(small_corpus().into_iter().take(60));
    out
}

fn c7_cd_bounds(corpus: &[(String, Graph)]) -> Verdict {
    let two = Dimension::integer(2).unwrap();
    let counts: Vec<Result<[usize; 5], String>> = corpus
        .par_iter()
        .map(|(spec, g)| {
            let reports = edge_reports(g);
            let mut counts = [0usize; 5];
            for x in (0..g.vertex_count()).filter(|&x| g.unweighted_degree(x) > 0) {
                let mut bounds: Vec<(usize, Rational)> = vec![(0, cd_bound_max_degree(g, x).unwrap()), (4, cd_bound_tw(g, x).unwrap())];
                if !g.is_weighted() {
                    bounds.push((1, cd_bound_triangles(g, x).unwrap()));
                    let kappas: Vec<(usize, Rational)> = reports
                        .iter()
                        .filter(|r| r.x == x || r.y == x)
                        .map(|r| (if r.x == x { r.y } else { r.x }, r.kappa.clone()))
                        .collect();
                    let kmin = kappas.iter().map(|(_, k)| k.clone()).min().unwrap();
                    if kmin.is_positive() {
                        bounds.push((2, cd_bound_positive_kappa(g, x, None, &kappas).unwrap()));
                        let k78 = cd_bound_positive_kappa(g, x, Some(&kmin), &kappas).unwrap();
                        let rough = cd_bound_rough(g, x, &kmin).unwrap();
                        if rough > k78 {
                            return Err(format!("{spec} vertex {x}: rough form {rough} exceeds {k78}"));
                        }
                        bounds.push((3, k78));
                    }
                }
                for (which, k) in bounds {
                    if cd_verify(g, x, &two, &k).unwrap().holds() != Some(true) {
                        return Err(format!("{spec} vertex {x}: CD(2, {k}) from bound #{which} fails"));
                    }
                    counts[which] += 1;
                }
            }
            Ok(counts)
        })
        .collect();
    let mut total = [0usize; 5];
    for c in counts {
        for (t, c) in total.iter_mut().zip(c?) {
            *t += c;
        }
    }
    if total.iter().any(|&c| c == 0) {
        return Err(format!("some bound was never exercised: {total:?}"));
    }
    Ok(format!(
        "{} graphs; verified vertices: 2/D_w-1 {}, t/2-1 {}, kappa>0 {}, kappa>=k {}, t_w/2-1 {}",
        corpus.len(),
        total[0],
        total[1],
        total[2],
        total[3],
        total[4]
    ))
}

fn c8_cd_optimality() -> Verdict {
    let tol = 1e-9;
    let check = |g: &Graph, x: usize, m: Dimension, expected: f64, what: &str| -> Result<(), String> {
        let k = cd_optimal_k(g, x, &m, tol).map_err(|e| format!("{what}: {e}"))?.k_opt().unwrap();
        if (k - expected).abs() > tol {
            return Err(format!("{what}: K_opt {k} expected {expected}"));
        }
        Ok(())
    };
    for n in 3..=10i64 {
        let g = family(&format!("complete:{n}"));
        let nf = n as f64;
        check(&g, 0, Dimension::integer(2).unwrap(), (4.0 - nf) / (2.0 * (nf - 1.0)), &format!("K_{n}, m=2"))?;
        check(&g, 0, Dimension::integer(n - 1).unwrap(), (nf - 2.0) / (2.0 * (nf - 1.0)), &format!("K_{n}, m={}", n - 1))?;
    }
    let tree = family("regular-tree:3:3");
    for x in [0, 1] {
        check(&tree, x, Dimension::integer(2).unwrap(), -1.0 / 3.0, &format!("3-regular tree vertex {x}"))?;
    }
    Ok("K_3..K_10 for m=2 and m=n-1, 3-regular tree of depth 3, all within 1e-9".into())
}

fn c9_scalar(corpus: &[(String, Graph)]) -> Verdict {
    let results: Vec<Result<usize, String>> = corpus
        .par_iter()
        .map(|(spec, g)| {
            let mut n = 0;
            for x in (0..g.vertex_count()).filter(|&x| g.unweighted_degree(x) >= 2) {
                let r = scalar_report(g, x).map_err(|e| format!("{spec} vertex {x}: {e}"))?;
                let refined = r.refined_lower.as_ref().map_or(true, |l| l <= &r.mean_kappa);
                if !(r.lower <= r.mean_kappa && r.mean_kappa <= r.upper && refined) {
                    return Err(format!("{spec} vertex {x}: {} <= {} <= {}", r.lower, r.mean_kappa, r.upper));
                }
                n += 1;
            }
            Ok(n)
        })
        .collect();
    let mut vertices = 0;
    for r in results {
        vertices += r?;
    }
    for n in 3..=12 {
        let g = family(&format!("complete:{n}"));
        for x in 0..n {
            let r = scalar_report(&g, x).unwrap();
            if r.mean_kappa != r.upper {
                return Err(format!("K_{n}: mean {} upper {}", r.mean_kappa, r.upper));
            }
        }
    }
    Ok(format!("{vertices} vertices in {} graphs; upper bound attained on K_3..K_12", corpus.len()))
}

fn c10_weighted() -> Verdict {
    let mut tree_edges = 0;
    for seed in 0..20 {
        let n = 2 + (seed * 7) % 40;
        let g = family(&format!("wtree:{n}:{seed}"));
        for r in edge_reports(&g) {
            let w = g.weight(r.x, r.y).unwrap();
            let expected = int(-2) * pos(Rational::one() - w / degree(&g, r.x) - w / degree(&g, r.y));
            if r.kappa != expected {
                return Err(format!("wtree {seed} ({}, {}): kappa {} expected {expected}", r.x, r.y, r.kappa));
            }
            tree_edges += 1;
        }
    }
    let corpus = weighted_corpus();
    let mut edges = 0;
    for (spec, g) in &corpus {
        for r in edge_reports(g) {
            let b = r.bounds.as_ref().unwrap();
            let ok = b.lower_linyau <= b.lower_triangle
                && b.lower_triangle <= r.kappa
                && r.kappa <= b.upper_triangle
                && b.upper_triangle <= Rational::one();
            if !ok {
                return Err(format!(
                    "{spec} ({}, {}): {} <= {} <= {} <= {} ({})",
                    r.x,
                    r.y,
                    b.lower_linyau,
                    b.lower_triangle,
                    r.kappa,
                    b.upper_triangle,
                    b.case_tag.label(true)
                ));
            }
            edges += 1;
        }
    }
    Ok(format!("{tree_edges} weighted tree edges exact; sandwich on {edges} edges of {} weighted graphs", corpus.len()))
}

fn c11_diameter(corpora: &[&[(String, Graph)]]) -> Verdict {
    let mut applicable = 0;
    let mut total = 0;
    for corpus in corpora {
        for (spec, g) in corpus.iter().filter(|(_, g)| g.is_connected()) {
            total += 1;
            let kmin = g
                .edges()
                .map(|(x, y, _)| {
                    let mx = random_walk_measure(g, x).unwrap();
                    let my = random_walk_measure(g, y).unwrap();
                    Rational::one() - wasserstein1(g, &mx, &my).unwrap().value
                })
                .min();
            let Some(k) = kmin.filter(|k| k.is_positive()) else { continue };
            applicable += 1;
            let diam = int(i64::from(g.diameter().unwrap()));
            if diam > int(2) / &k {
                return Err(format!("{spec}: diameter {diam} exceeds 2/{k}"));
            }
        }
    }
    if applicable == 0 {
        return Err("no graph with positive curvature".into());
    }
    Ok(format!("{applicable} of {total} graphs have min kappa > 0; all within 2/k"))
}

fn main() {
    let mut failed = false;
    let mut report = |id: u32, title: &str, limit: Option<Duration>, body: &mut dyn FnMut() -> Verdict| {
        let start = Instant::now();
        let verdict = body();
        let elapsed = start.elapsed();
        let overrun = limit.filter(|l| elapsed > *l);
        let (status, detail) = match (&verdict, overrun) {
            (Ok(d), None) => ("PASS", d.clone()),
            (Ok(d), Some(l)) => ("FAIL", format!("{d}; took {elapsed:.2?}, limit {l:.0?}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        failed |= status == "FAIL";
        println!("{status} criterion {id:>2} [{title}] ({elapsed:.2?}): {detail}");
    };

    let complete: Vec<(String, Graph)> = (2..=12).map(|n| (format!("complete:{n}"), family(&format!("complete:{n}")))).collect();
    let er = er_corpus();
    let small = small_corpus();
    let cd = cd_corpus();

    report(1, "complete graphs", Some(Duration::from_secs(5)), &mut c1_complete_graphs);
    report(2, "trees", Some(Duration::from_secs(30)), &mut c2_trees);
    report(3, "bound sandwich", Some(Duration::from_secs(120)), &mut || c3_sandwich(&er));
    report(5, "oracle equivalence", None, &mut || c5_oracle(&small));
    report(6, "gamma2 identity", None, &mut c6_gamma2_identity);
    report(7, "closed-form CD bounds", None, &mut || c7_cd_bounds(&cd));
    report(8, "CD optimality", Some(Duration::from_secs(60)), &mut c8_cd_optimality);
    report(9, "scalar sandwich", None, &mut || c9_scalar(&er));
    report(10, "weighted", None, &mut c10_weighted);
    report(11, "diameter consistency", None, &mut || c11_diameter(&[&complete, &er, &small, &cd]));
    report(4, "duality certificates", None, &mut c4_certificates);

    if failed {
        std::process::exit(1);
    }
}
