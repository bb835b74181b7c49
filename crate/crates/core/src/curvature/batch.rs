use rayon::prelude::*;

use super::{pair_report, EdgeCurvatureReport};
use crate::error::Result;
use crate::graph::Graph;

/// Which vertex pairs a batch report covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairSelector {
    Edges,
    AllPairs,
    Explicit(Vec<(usize, usize)>),
}

/// One row of a batch: the pair and its report or the error it raised.
#[derive(Debug, Clone)]
pub struct PairOutcome {
    pub x: usize,
    pub y: usize,
    pub result: Result<EdgeCurvatureReport>,
}

fn select(g: &Graph, selector: &PairSelector) -> Vec<(usize, usize)> {
    match selector {
        PairSelector::Edges => g.edges().map(|(u, v, _)| (u, v)).collect(),
        PairSelector::AllPairs => {
            let n = g.vertex_count();
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
        }
        PairSelector::Explicit(pairs) => pairs.clone(),
    }
}

/// Evaluates every selected pair, on `workers` threads when given. Each
/// pair is oriented so the smaller label comes first and rows are sorted by
/// labels, so the output does not depend on scheduling.
pub fn graph_report(g: &Graph, selector: &PairSelector, workers: Option<usize>) -> Vec<PairOutcome> {
    let mut pairs: Vec<(usize, usize)> = select(g, selector)
        .into_iter()
        .map(|(u, v)| {
            let ordered = u >= g.vertex_count()
                || v >= g.vertex_count()
                || (g.label(u), u) <= (g.label(v), v);
            if ordered {
                (u, v)
            } else {
                (v, u)
            }
        })
        .collect();
    let key = |&(u, v): &(usize, usize)| {
        let l = |i: usize| if i < g.vertex_count() { g.label(i) } else { "" };
        (l(u).to_owned(), l(v).to_owned(), u, v)
    };
    pairs.sort_by_key(key);

    let run = |pairs: &[(usize, usize)]| -> Vec<PairOutcome> {
        pairs
            .par_iter()
            .map(|&(x, y)| PairOutcome {
                x,
                y,
                result: pair_report(g, x, y),
            })
            .collect()
    };
    match workers {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(|| run(&pairs)),
            Err(_) => run(&pairs),
        },
        None => run(&pairs),
    }
}
