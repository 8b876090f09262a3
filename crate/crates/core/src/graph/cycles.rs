//! Girth and exact-length cycle detection.

use super::{MarkedGraph, VertexId};
use serde::{Serialize, Serializer};
use std::collections::{BTreeSet, VecDeque};
use thiserror::Error;

/// Default node budget for exact-length cycle searches.
pub const DEFAULT_CYCLE_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleSearchError {
    #[error("cycle search exceeded its budget of {0} nodes")]
    BudgetExceeded(u64),
}

/// Length of a shortest cycle; forests have infinite girth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }

    pub fn at_least(self, k: usize) -> bool {
        match self {
            Girth::Finite(g) => g >= k,
            Girth::Infinite => true,
        }
    }
}

impl std::fmt::Display for Girth {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Girth {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Girth::Finite(g) => s.serialize_u64(*g as u64),
            Girth::Infinite => s.serialize_none(),
        }
    }
}

/// Girth and the subset of queried cycle lengths that occur.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleReport {
    pub girth: Girth,
    pub present_lengths: BTreeSet<usize>,
}

/// BFS from `root`; returns the shortest closed walk through a non-tree
/// edge as `(length, u, w)` together with parent pointers.
fn bfs_cycle(g: &MarkedGraph, root: VertexId, cap: usize) -> (Option<(usize, VertexId, VertexId)>, Vec<usize>) {
    let n = g.n();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    dist[root] = 0;
    let mut queue = VecDeque::from([root]);
    let mut best: Option<(usize, VertexId, VertexId)> = None;
    while let Some(u) = queue.pop_front() {
        if 2 * dist[u] + 1 >= best.map_or(cap, |b| b.0) {
            break;
        }
        for w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                parent[w] = u;
                queue.push_back(w);
            } else if parent[u] != w {
                let len = dist[u] + dist[w] + 1;
                if best.is_none_or(|b| len < b.0) {
                    best = Some((len, u, w));
                }
            }
        }
    }
    (best, parent)
}

/// Exact girth by breadth-first search from every vertex.
pub fn girth(g: &MarkedGraph) -> Girth {
    let mut best = usize::MAX;
    for root in g.vertices() {
        if let (Some((len, _, _)), _) = bfs_cycle(g, root, best) {
            best = best.min(len);
        }
    }
    if best == usize::MAX {
        Girth::Infinite
    } else {
        Girth::Finite(best)
    }
}

/// A shortest cycle as a vertex sequence, or `None` for forests.
pub fn shortest_cycle(g: &MarkedGraph) -> Option<Vec<VertexId>> {
    let target = girth(g).finite()?;
    for root in g.vertices() {
        let (found, parent) = bfs_cycle(g, root, target + 1);
        let Some((len, u, w)) = found else { continue };
        if len != target {
            continue;
        }
        let climb = |mut x: VertexId| {
            let mut out = vec![x];
            while x != root {
                x = parent[x];
                out.push(x);
            }
            out
        };
        let left = climb(u);
        let right = climb(w);
        let mut cycle: Vec<VertexId> = left.iter().rev().copied().collect();
        cycle.extend(right.iter().rev().skip(1).rev());
        let distinct: BTreeSet<_> = cycle.iter().collect();
        if distinct.len() == target && cycle.len() == target {
            return Some(cycle);
        }
    }
    None
}

struct CycleSearch<'a> {
    g: &'a MarkedGraph,
    k: usize,
    start: VertexId,
    dist: Vec<usize>,
    on_path: Vec<bool>,
    path: Vec<VertexId>,
    nodes: u64,
    budget: u64,
}

impl CycleSearch<'_> {
    /// Depth-first extension of `path`; calls `found` for each closing path.
    fn extend(&mut self, found: &mut dyn FnMut(&[VertexId]) -> bool) -> Result<bool, CycleSearchError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(CycleSearchError::BudgetExceeded(self.budget));
        }
        let u = *self.path.last().expect("path starts at the root");
        if self.path.len() == self.k {
            if self.g.has_edge(u, self.start) && self.path[1] < u && found(&self.path) {
                return Ok(true);
            }
            return Ok(false);
        }
        let remaining = self.k - self.path.len();
        for w in self.g.neighbors(u) {
            if w <= self.start || self.on_path[w] || self.dist[w] > remaining {
                continue;
            }
            self.on_path[w] = true;
            self.path.push(w);
            let stop = self.extend(found)?;
            self.path.pop();
            self.on_path[w] = false;
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Visits every simple cycle of length `k` once, as a sequence starting at
/// its smallest vertex with the second vertex smaller than the last. The
/// visitor returns `true` to stop early.
pub fn visit_cycles_of_length(
    g: &MarkedGraph,
    k: usize,
    budget: u64,
    found: &mut dyn FnMut(&[VertexId]) -> bool,
) -> Result<bool, CycleSearchError> {
    if k < 3 || k > g.n() {
        return Ok(false);
    }
    let mut nodes = 0u64;
    for start in g.vertices() {
        let mut dist = vec![usize::MAX; g.n()];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for w in g.neighbors(u) {
                if w > start && dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        let mut on_path = vec![false; g.n()];
        on_path[start] = true;
        let mut search = CycleSearch {
            g,
            k,
            start,
            dist,
            on_path,
            path: vec![start],
            nodes,
            budget,
        };
        let stop = search.extend(found)?;
        nodes = search.nodes;
        if stop {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether `g` has a simple cycle of length exactly `k`, under `budget`
/// search nodes.
pub fn has_cycle_of_length_with_budget(g: &MarkedGraph, k: usize, budget: u64) -> Result<bool, CycleSearchError> {
    visit_cycles_of_length(g, k, budget, &mut |_| true)
}

/// Whether `g` has a simple cycle of length exactly `k`.
pub fn has_cycle_of_length(g: &MarkedGraph, k: usize) -> Result<bool, CycleSearchError> {
    has_cycle_of_length_with_budget(g, k, DEFAULT_CYCLE_BUDGET)
}

/// All simple cycles of length `k` in canonical orientation.
pub fn cycles_of_length(g: &MarkedGraph, k: usize, budget: u64) -> Result<Vec<Vec<VertexId>>, CycleSearchError> {
    let mut out = Vec::new();
    visit_cycles_of_length(g, k, budget, &mut |c| {
        out.push(c.to_vec());
        false
    })?;
    Ok(out)
}

pub fn cycle_report(g: &MarkedGraph, lengths: &[usize], budget: u64) -> Result<CycleReport, CycleSearchError> {
    let mut present = BTreeSet::new();
    for &k in lengths {
        if has_cycle_of_length_with_budget(g, k, budget)? {
            present.insert(k);
        }
    }
    Ok(CycleReport {
        girth: girth(g),
        present_lengths: present,
    })
}
