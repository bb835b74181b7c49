//! Integer min-cost flow by successive shortest paths with node potentials.
//!
//! Each phase runs Dijkstra on reduced costs, lifts the potentials, and then
//! pushes a blocking flow through the subgraph of zero-reduced-cost residual
//! arcs, i.e. along every currently shortest augmenting path at once. Arcs
//! are scanned in insertion order and vertices are settled lowest index
//! first, so the resulting flow is deterministic.

use std::collections::VecDeque;

pub type Flow = i128;
pub type Cost = i64;

pub const INF_CAP: Flow = Flow::MAX / 4;
const INF_COST: Cost = Cost::MAX / 4;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: Flow,
    cost: Cost,
}

#[derive(Debug, Clone)]
pub struct MinCostFlow {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
    potential: Vec<Cost>,
}

impl MinCostFlow {
    pub fn new(n: usize) -> Self {
        Self {
            arcs: Vec::new(),
            out: vec![Vec::new(); n],
            potential: vec![0; n],
        }
    }

    /// Adds `u -> v` and its residual twin; returns the forward arc id.
    /// Costs must be nonnegative.
    pub fn add_arc(&mut self, u: usize, v: usize, cap: Flow, cost: Cost) -> usize {
        debug_assert!(cost >= 0);
        let id = self.arcs.len();
        self.arcs.push(Arc { to: v, cap, cost });
        self.arcs.push(Arc {
            to: u,
            cap: 0,
            cost: -cost,
        });
        self.out[u].push(id);
        self.out[v].push(id + 1);
        id
    }

    /// Flow currently carried by forward arc `id`.
    pub fn flow(&self, id: usize) -> Flow {
        self.arcs[id ^ 1].cap
    }

    fn reduced(&self, from: usize, id: usize) -> Cost {
        let a = &self.arcs[id];
        a.cost + self.potential[from] - self.potential[a.to]
    }

    /// Dense Dijkstra on reduced costs; ties go to the lowest vertex index.
    fn shortest_distances(&self, s: usize) -> Vec<Cost> {
        let n = self.out.len();
        let mut dist = vec![INF_COST; n];
        let mut done = vec![false; n];
        dist[s] = 0;
        loop {
            let mut u = usize::MAX;
            for v in 0..n {
                if !done[v] && dist[v] < INF_COST && (u == usize::MAX || dist[v] < dist[u]) {
                    u = v;
                }
            }
            if u == usize::MAX {
                break;
            }
            done[u] = true;
            for &id in &self.out[u] {
                if self.arcs[id].cap > 0 {
                    let v = self.arcs[id].to;
                    let nd = dist[u] + self.reduced(u, id);
                    if nd < dist[v] {
                        dist[v] = nd;
                    }
                }
            }
        }
        dist
    }

    fn admissible(&self, u: usize, id: usize) -> bool {
        self.arcs[id].cap > 0 && self.reduced(u, id) == 0
    }

    fn levels(&self, s: usize, t: usize) -> Option<Vec<usize>> {
        let mut level = vec![usize::MAX; self.out.len()];
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &id in &self.out[u] {
                let v = self.arcs[id].to;
                if level[v] == usize::MAX && self.admissible(u, id) {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        (level[t] != usize::MAX).then_some(level)
    }

    fn push(&mut self, u: usize, t: usize, limit: Flow, level: &[usize], next: &mut [usize]) -> Flow {
        if u == t {
            return limit;
        }
        while next[u] < self.out[u].len() {
            let id = self.out[u][next[u]];
            let v = self.arcs[id].to;
            if level[v] == level[u] + 1 && self.admissible(u, id) {
                let pushed = self.push(v, t, limit.min(self.arcs[id].cap), level, next);
                if pushed > 0 {
                    self.arcs[id].cap -= pushed;
                    self.arcs[id ^ 1].cap += pushed;
                    return pushed;
                }
            }
            next[u] += 1;
        }
        0
    }

    /// Sends up to `demand` units from `s` to `t` at minimum cost. Returns
    /// the amount sent and its cost.
    pub fn solve(&mut self, s: usize, t: usize, demand: Flow) -> (Flow, i128) {
        let mut sent: Flow = 0;
        while sent < demand {
            let dist = self.shortest_distances(s);
            if dist[t] >= INF_COST {
                break;
            }
            // Capping at dist[t] keeps every residual reduced cost nonnegative.
            let cap = dist[t];
            for (p, d) in self.potential.iter_mut().zip(&dist) {
                *p += (*d).min(cap);
            }
            while sent < demand {
                let Some(level) = self.levels(s, t) else { break };
                let mut next = vec![0usize; self.out.len()];
                loop {
                    let f = self.push(s, t, demand - sent, &level, &mut next);
                    if f == 0 {
                        break;
                    }
                    sent += f;
                    if sent == demand {
                        break;
                    }
                }
            }
        }
        let cost = (0..self.arcs.len())
            .step_by(2)
            .map(|id| self.flow(id) * self.arcs[id].cost as i128)
            .sum();
        (sent, cost)
    }

    /// Potentials `p` with `p[v] <= p[u] + cost` on every residual arc,
    /// obtained by Bellman-Ford from a virtual root joined to all vertices.
    /// Requires the current flow to be min-cost (no negative residual cycle).
    pub fn residual_potentials(&self) -> Vec<Cost> {
        let n = self.out.len();
        let mut p = vec![0 as Cost; n];
        let mut in_queue = vec![true; n];
        let mut queue: VecDeque<usize> = (0..n).collect();
        let mut relaxations = 0usize;
        let limit = n.saturating_mul(self.arcs.len()).saturating_add(n);
        while let Some(u) = queue.pop_front() {
            in_queue[u] = false;
            for &id in &self.out[u] {
                let a = &self.arcs[id];
                if a.cap > 0 && p[u] + a.cost < p[a.to] {
                    p[a.to] = p[u] + a.cost;
                    relaxations += 1;
                    assert!(relaxations <= limit, "negative residual cycle");
                    if !in_queue[a.to] {
                        in_queue[a.to] = true;
                        queue.push_back(a.to);
                    }
                }
            }
        }
        p
    }
}
