//! Named graph families for test corpora and the command line.
//!
//! | spec                   | graph                                            |
//! |------------------------|--------------------------------------------------|
//! | `complete:n`           | `K_n`                                            |
//! | `cycle:n`              | `C_n`, `n ≥ 3`                                   |
//! | `path:n`               | path on `n` vertices                             |
//! | `star:n`               | center plus `n` leaves                           |
//! | `tree:random:n:seed`   | uniform labelled tree (Prüfer sequence)          |
//! | `gnp:n:p:seed`         | Erdős–Rényi `G(n, p)`                            |
//! | `regular-tree:d:depth` | `d`-regular tree truncated at `depth`            |
//! | `wtree:n:seed`         | random tree with random rational weights         |
//! | `wgnp:n:p:seed`        | `G(n, p)` with random rational weights           |
//!
//! Random families draw from a ChaCha stream seeded by `seed`, so a spec
//! names one fixed graph on every platform.

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::{rat, Rational};

type Edge = (usize, usize, Rational);

fn spec_error(spec: &str, message: impl Into<String>) -> Error {
    Error::FamilySpec {
        spec: spec.to_owned(),
        message: message.into(),
    }
}

pub fn generate_family(spec: &str) -> Result<Graph> {
    let parts: Vec<&str> = spec.trim().split(':').collect();
    let num = |i: usize| -> Result<usize> {
        parts
            .get(i)
            .ok_or_else(|| spec_error(spec, "missing parameter"))?
            .parse::<usize>()
            .map_err(|e| spec_error(spec, format!("parameter {}: {e}", i)))
    };
    let seed = |i: usize| -> Result<u64> {
        parts
            .get(i)
            .ok_or_else(|| spec_error(spec, "missing seed"))?
            .parse::<u64>()
            .map_err(|e| spec_error(spec, format!("seed: {e}")))
    };
    let prob = |i: usize| -> Result<f64> {
        let p: f64 = parts
            .get(i)
            .ok_or_else(|| spec_error(spec, "missing probability"))?
            .parse()
            .map_err(|e| spec_error(spec, format!("probability: {e}")))?;
        if (0.0..=1.0).contains(&p) {
            Ok(p)
        } else {
            Err(spec_error(spec, "probability must lie in [0, 1]"))
        }
    };
    let arity = |k: usize| -> Result<()> {
        if parts.len() == k {
            Ok(())
        } else {
            Err(spec_error(spec, format!("expected {k} fields, got {}", parts.len())))
        }
    };

    let unit = |edges: Vec<(usize, usize)>| edges.into_iter().map(|(u, v)| (u, v, Rational::one())).collect::<Vec<_>>();
    let (n, edges, weighted): (usize, Vec<Edge>, bool) = match parts[0] {
        "complete" => {
            arity(2)?;
            let n = num(1)?;
            (n, unit(complete_edges(n)), false)
        }
        "cycle" => {
            arity(2)?;
            let n = num(1)?;
            if n < 3 {
                return Err(spec_error(spec, "a cycle needs at least 3 vertices"));
            }
            (n, unit((0..n).map(|i| (i, (i + 1) % n)).collect()), false)
        }
        "path" => {
            arity(2)?;
            let n = num(1)?;
            (n, unit((1..n).map(|i| (i - 1, i)).collect()), false)
        }
        "star" => {
            arity(2)?;
            let k = num(1)?;
            (k + 1, unit((1..=k).map(|i| (0, i)).collect()), false)
        }
        "tree" => {
            arity(4)?;
            if parts[1] != "random" {
                return Err(spec_error(spec, "expected tree:random:n:seed"));
            }
            let n = num(2)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed(3)?);
            (n, unit(random_tree(n, &mut rng)), false)
        }
        "gnp" => {
            arity(4)?;
            let n = num(1)?;
            let p = prob(2)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed(3)?);
            (n, unit(gnp(n, p, &mut rng)), false)
        }
        "regular-tree" => {
            arity(3)?;
            let d = num(1)?;
            let depth = num(2)?;
            if d < 2 {
                return Err(spec_error(spec, "degree must be at least 2"));
            }
            let edges = regular_tree(d, depth);
            if edges.len() > 1_000_000 {
                return Err(spec_error(spec, "tree too large"));
            }
            (edges.len() + 1, unit(edges), false)
        }
        "wtree" => {
            arity(3)?;
            let n = num(1)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed(2)?);
            let edges = random_tree(n, &mut rng);
            (n, weigh(edges, &mut rng), true)
        }
        "wgnp" => {
            arity(4)?;
            let n = num(1)?;
            let p = prob(2)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed(3)?);
            let edges = gnp(n, p, &mut rng);
            (n, weigh(edges, &mut rng), true)
        }
        other => return Err(spec_error(spec, format!("unknown family '{other}'"))),
    };
    Graph::from_edges(n, edges, weighted)
}

fn complete_edges(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// Decodes a uniformly random Prüfer sequence.
fn random_tree(n: usize, rng: &mut impl Rng) -> Vec<(usize, usize)> {
    match n {
        0 | 1 => return Vec::new(),
        2 => return vec![(0, 1)],
        _ => {}
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &s in &seq {
        degree[s] += 1;
    }
    let mut leaves: std::collections::BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &s in &seq {
        let leaf = leaves.pop_first().expect("a Prüfer sequence always leaves a leaf");
        edges.push((leaf.min(s), leaf.max(s)));
        degree[s] -= 1;
        if degree[s] == 1 {
            leaves.insert(s);
        }
    }
    let u = leaves.pop_first().expect("two leaves remain");
    let v = leaves.pop_first().expect("two leaves remain");
    edges.push((u, v));
    edges
}

fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> Vec<(usize, usize)> {
    complete_edges(n).into_iter().filter(|_| rng.gen_bool(p)).collect()
}

/// Root of degree `d`; every other internal vertex has `d - 1` children.
fn regular_tree(d: usize, depth: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    let mut frontier = vec![0usize];
    let mut next_id = 1;
    for level in 0..depth {
        let children = if level == 0 { d } else { d - 1 };
        let mut next = Vec::with_capacity(frontier.len() * children);
        for &parent in &frontier {
            for _ in 0..children {
                edges.push((parent, next_id));
                next.push(next_id);
                next_id += 1;
            }
        }
        frontier = next;
    }
    edges
}

/// Weights `p/q` with `p ∈ 1..=6`, `q ∈ 1..=4`.
fn weigh(edges: Vec<(usize, usize)>, rng: &mut impl Rng) -> Vec<Edge> {
    edges
        .into_iter()
        .map(|(u, v)| (u, v, rat(rng.gen_range(1..=6), rng.gen_range(1..=4))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_families() {
        let k5 = generate_family("complete:5").unwrap();
        assert_eq!((k5.vertex_count(), k5.edge_count()), (5, 10));
        let t = generate_family("regular-tree:3:2").unwrap();
        assert_eq!((t.vertex_count(), t.edge_count()), (10, 9));
        assert_eq!(t.unweighted_degree(0), 3);
        assert_eq!(t.unweighted_degree(1), 3);
        assert_eq!(t.unweighted_degree(9), 1);
        let s = generate_family("star:5").unwrap();
        assert_eq!(s.unweighted_degree(0), 5);
        assert_eq!(generate_family("cycle:6").unwrap().edge_count(), 6);
        assert_eq!(generate_family("path:4").unwrap().edge_count(), 3);
    }

    #[test]
    fn seeded_families_are_stable() {
        let a = generate_family("gnp:20:0.3:7").unwrap();
        let b = generate_family("gnp:20:0.3:7").unwrap();
        assert_eq!(a, b);
        assert_ne!(a, generate_family("gnp:20:0.3:8").unwrap());
        for seed in 0..20 {
            let t = generate_family(&format!("tree:random:30:{seed}")).unwrap();
            assert!(t.is_tree());
            let w = generate_family(&format!("wtree:15:{seed}")).unwrap();
            assert!(w.is_tree() && w.is_weighted());
        }
    }

    #[test]
    fn malformed_specs() {
        for bad in ["", "complete", "complete:x", "cycle:2", "gnp:5:1.5:1", "tree:fixed:4:1", "hypercube:3", "path:3:4"] {
            assert!(matches!(generate_family(bad), Err(Error::FamilySpec { .. })), "{bad}");
        }
    }
}
