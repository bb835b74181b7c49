//! Immutable weighted simple graphs with dense vertex indexing.

mod edge_list;
mod stats;

use std::collections::{HashMap, VecDeque};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Rational;

pub use edge_list::{load_edge_list, parse_edge_list, parse_weight, to_edge_list};
pub use stats::{
    clustering_coefficient, common_neighbors, degree_summary, triangle_count, DegreeSummary,
};
pub(crate) use stats::{max_neighbor_degree, max_weighted_neighbor_ratio};

/// Undirected simple graph with positive rational edge weights.
///
/// Adjacency lists are sorted by neighbor index and symmetric. Unweighted
/// graphs carry weight 1 on every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    adjacency: Vec<Vec<(usize, Rational)>>,
    degrees: Vec<Rational>,
    weighted: bool,
}

/// Incremental construction with label interning. Vertices are indexed in
/// first-seen order.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adjacency: Vec<Vec<(usize, Rational)>>,
    weighted: bool,
}

/// Reasons an edge can be rejected by [`GraphBuilder::add_edge`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeRejection {
    Loop,
    Duplicate,
    NonPositiveWeight,
}

impl GraphBuilder {
    pub fn new(weighted: bool) -> Self {
        Self {
            weighted,
            ..Self::default()
        }
    }

    pub fn vertex(&mut self, label: &str) -> usize {
        if let Some(&i) = self.index.get(label) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(label.to_owned());
        self.index.insert(label.to_owned(), i);
        self.adjacency.push(Vec::new());
        i
    }

    pub fn add_edge(
        &mut self,
        u: usize,
        v: usize,
        weight: Rational,
    ) -> std::result::Result<(), EdgeRejection> {
        if u == v {
            return Err(EdgeRejection::Loop);
        }
        if weight <= Rational::zero() {
            return Err(EdgeRejection::NonPositiveWeight);
        }
        let pos = match self.adjacency[u].binary_search_by_key(&v, |(n, _)| *n) {
            Ok(_) => return Err(EdgeRejection::Duplicate),
            Err(pos) => pos,
        };
        self.adjacency[u].insert(pos, (v, weight.clone()));
        let pos = self.adjacency[v]
            .binary_search_by_key(&u, |(n, _)| *n)
            .unwrap_err();
        self.adjacency[v].insert(pos, (u, weight));
        Ok(())
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn build(self) -> Graph {
        let degrees = self
            .adjacency
            .iter()
            .map(|adj| adj.iter().map(|(_, w)| w).sum())
            .collect();
        Graph {
            labels: self.labels,
            adjacency: self.adjacency,
            degrees,
            weighted: self.weighted,
        }
    }
}

impl Graph {
    /// Builds a graph on vertices labelled `0..n` from an edge list.
    pub fn from_edges<I>(n: usize, edges: I, weighted: bool) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut b = GraphBuilder::new(weighted);
        for i in 0..n {
            b.vertex(&i.to_string());
        }
        for (k, (u, v, w)) in edges.into_iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange(u.max(v)));
            }
            b.add_edge(u, v, w.clone()).map_err(|r| match r {
                EdgeRejection::Loop => Error::Loop {
                    line: k + 1,
                    label: u.to_string(),
                },
                EdgeRejection::Duplicate => Error::DuplicateEdge {
                    line: k + 1,
                    u: u.to_string(),
                    v: v.to_string(),
                },
                EdgeRejection::NonPositiveWeight => Error::NonPositiveWeight {
                    line: k + 1,
                    weight: w.to_string(),
                },
            })?;
        }
        Ok(b.build())
    }

    /// Unweighted graph on `0..n`.
    pub fn unweighted(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::from_edges(
            n,
            edges.iter().map(|&(u, v)| (u, v, Rational::one())),
            false,
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Sorted `(neighbor, weight)` pairs of `x`.
    pub fn neighbors(&self, x: usize) -> &[(usize, Rational)] {
        &self.adjacency[x]
    }

    pub fn neighbor_ids(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[x].iter().map(|(n, _)| *n)
    }

    pub fn weight(&self, x: usize, y: usize) -> Option<&Rational> {
        let adj = &self.adjacency[x];
        adj.binary_search_by_key(&y, |(n, _)| *n)
            .ok()
            .map(|i| &adj[i].1)
    }

    pub fn is_adjacent(&self, x: usize, y: usize) -> bool {
        self.weight(x, y).is_some()
    }

    /// Weighted degree `d_x`, the sum of incident edge weights.
    pub fn degree(&self, x: usize) -> &Rational {
        &self.degrees[x]
    }

    /// Number of neighbors of `x`.
    pub fn unweighted_degree(&self, x: usize) -> usize {
        self.adjacency[x].len()
    }

    /// Edges `(u, v, w)` with `u < v`, in index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, adj)| {
            adj.iter()
                .filter(move |(v, _)| *v > u)
                .map(move |(v, w)| (u, *v, w))
        })
    }

    pub fn check_vertex(&self, x: usize) -> Result<()> {
        if x < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange(x))
        }
    }

    pub fn require_adjacent(&self, x: usize, y: usize) -> Result<()> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        if self.is_adjacent(x, y) {
            Ok(())
        } else {
            Err(Error::NotAdjacent { x, y })
        }
    }

    /// Hop distance between `x` and `y`; `None` when unreachable or farther
    /// than `cap`. Weights play no role in the metric.
    pub fn hop_distance(&self, x: usize, y: usize, cap: Option<u32>) -> Result<Option<u32>> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        Ok(self.distances_to(x, &[y], cap)[0])
    }

    /// Closed ball `{ y : d(x, y) <= r }`, sorted by index.
    pub fn ball(&self, x: usize, r: u32) -> Result<Vec<usize>> {
        self.check_vertex(x)?;
        let mut seen = vec![false; self.vertex_count()];
        let mut out = vec![x];
        seen[x] = true;
        let mut frontier = vec![x];
        for _ in 0..r {
            let mut next = Vec::new();
            for &u in &frontier {
                for v in self.neighbor_ids(u) {
                    if !seen[v] {
                        seen[v] = true;
                        next.push(v);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            out.extend_from_slice(&next);
            frontier = next;
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Breadth-first search from `source` that stops once every target is
    /// settled or the depth exceeds `cap`. Entry `i` is the distance to
    /// `targets[i]`.
    pub fn distances_to(&self, source: usize, targets: &[usize], cap: Option<u32>) -> Vec<Option<u32>> {
        let n = self.vertex_count();
        let mut dist: Vec<Option<u32>> = vec![None; n];
        let mut wanted = vec![false; n];
        let mut remaining = 0usize;
        for &t in targets {
            if !wanted[t] {
                wanted[t] = true;
                remaining += 1;
            }
        }
        dist[source] = Some(0);
        if wanted[source] {
            remaining -= 1;
        }
        let mut queue = VecDeque::from([source]);
        while remaining > 0 {
            let Some(u) = queue.pop_front() else { break };
            let du = dist[u].unwrap_or(0);
            if cap.is_some_and(|c| du >= c) {
                continue;
            }
            for v in self.neighbor_ids(u) {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    if wanted[v] {
                        remaining -= 1;
                    }
                    queue.push_back(v);
                }
            }
        }
        targets.iter().map(|&t| dist[t]).collect()
    }

    /// Component id per vertex, numbered in order of smallest member.
    pub fn component_ids(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for v in self.neighbor_ids(u) {
                    if comp[v] == usize::MAX {
                        comp[v] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// Partition of the vertex set into connected components, each sorted.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let ids = self.component_ids();
        let count = ids.iter().copied().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); count];
        for (v, c) in ids.into_iter().enumerate() {
            blocks[c].push(v);
        }
        blocks
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Largest hop distance between vertices of one component.
    pub fn diameter(&self) -> Option<u32> {
        if !self.is_connected() {
            return None;
        }
        let all: Vec<usize> = (0..self.vertex_count()).collect();
        (0..self.vertex_count())
            .filter_map(|s| self.distances_to(s, &all, None).into_iter().flatten().max())
            .max()
    }

    pub fn is_tree(&self) -> bool {
        self.vertex_count() > 0
            && self.is_connected()
            && self.edge_count() + 1 == self.vertex_count()
    }
}
