//! Exact minimum marked dominating sets by branch and bound.
//!
//! A marked dominating set (MD-set) must dominate every unmarked vertex;
//! marked vertices need no domination but may still be chosen. Components
//! are solved independently and share one node budget.

use crate::graph::{MarkedGraph, VertexId};
use serde::Serialize;
use thiserror::Error;

/// Default branch-node budget.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DominatingWitness {
    pub size: usize,
    pub set: Vec<VertexId>,
    /// False when the search stopped on its budget.
    pub optimal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("node budget exhausted; best set found has size {}", incumbent.size)]
    BudgetExceeded { incumbent: DominatingWitness },
    #[error("graph has marked vertices")]
    MarkedInput,
}

/// Whether every unmarked vertex lies in `set` or has a neighbor in it.
pub fn is_md_set(g: &MarkedGraph, set: &[VertexId]) -> bool {
    let mut dominated = vec![false; g.n()];
    for &v in set {
        if v >= g.n() {
            return false;
        }
        dominated[v] = true;
        for w in g.neighbors(v) {
            dominated[w] = true;
        }
    }
    g.vertices().all(|v| g.is_marked(v) || dominated[v])
}

struct Search {
    closed: Vec<Vec<usize>>,
    need: Vec<bool>,
    cover: Vec<u8>,
    excluded: Vec<bool>,
    undominated: usize,
    chosen: Vec<usize>,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl Search {
    fn new(g: &MarkedGraph) -> Self {
        let n = g.n();
        let closed: Vec<Vec<usize>> = g
            .vertices()
            .map(|v| std::iter::once(v).chain(g.neighbors(v)).collect())
            .collect();
        let need: Vec<bool> = g.vertices().map(|v| !g.is_marked(v)).collect();
        let undominated = need.iter().filter(|&&b| b).count();
        Search {
            closed,
            need,
            cover: vec![0; n],
            excluded: vec![false; n],
            undominated,
            chosen: Vec::new(),
            best: Vec::new(),
            nodes: 0,
            budget: 0,
            aborted: false,
        }
    }

    fn gain(&self, x: usize) -> usize {
        self.closed[x]
            .iter()
            .filter(|&&y| self.need[y] && self.cover[y] == 0)
            .count()
    }

    fn add(&mut self, x: usize) {
        for &y in &self.closed[x] {
            if self.need[y] && self.cover[y] == 0 {
                self.undominated -= 1;
            }
            self.cover[y] += 1;
        }
        self.chosen.push(x);
    }

    fn remove(&mut self, x: usize) {
        for &y in &self.closed[x] {
            self.cover[y] -= 1;
            if self.need[y] && self.cover[y] == 0 {
                self.undominated += 1;
            }
        }
        self.chosen.pop();
    }

    /// Max-coverage greedy; ties go to the smallest id.
    fn greedy(&mut self) -> Vec<usize> {
        while self.undominated > 0 {
            let x = (0..self.closed.len())
                .max_by_key(|&x| (self.gain(x), std::cmp::Reverse(x)))
                .expect("undominated vertices exist");
            self.add(x);
        }
        let set = self.chosen.clone();
        for &x in set.iter().rev() {
            self.remove(x);
        }
        set
    }

    fn branch(&mut self) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        if self.undominated == 0 {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
            }
            return;
        }
        // Each closed neighborhood covers at most `max_gain` new vertices.
        let max_gain = (0..self.closed.len())
            .filter(|&x| !self.excluded[x])
            .map(|x| self.gain(x))
            .max()
            .unwrap_or(0);
        if max_gain == 0 {
            return;
        }
        let lower = self.chosen.len() + self.undominated.div_ceil(max_gain);
        if lower >= self.best.len() {
            return;
        }
        let mut pick: Option<(usize, usize)> = None;
        for v in 0..self.closed.len() {
            if !self.need[v] || self.cover[v] > 0 {
                continue;
            }
            let choices = self.closed[v].iter().filter(|&&x| !self.excluded[x]).count();
            if pick.is_none_or(|(c, _)| choices < c) {
                pick = Some((choices, v));
            }
        }
        let (choices, v) = pick.expect("an undominated vertex exists");
        if choices == 0 {
            return;
        }
        let mut candidates: Vec<usize> = self.closed[v].iter().copied().filter(|&x| !self.excluded[x]).collect();
        candidates.sort_by_key(|&x| (std::cmp::Reverse(self.gain(x)), x));
        for &c in &candidates {
            self.add(c);
            self.branch();
            self.remove(c);
            if self.aborted {
                break;
            }
            self.excluded[c] = true;
        }
        for &c in &candidates {
            self.excluded[c] = false;
        }
    }
}

fn solve_component(g: &MarkedGraph, budget: u64) -> (Vec<usize>, bool, u64) {
    let mut s = Search::new(g);
    s.best = s.greedy();
    s.budget = budget;
    s.branch();
    let mut best = s.best;
    best.sort_unstable();
    (best, !s.aborted, s.nodes)
}

/// Minimum MD-set of `g`, searched with at most `budget` branch nodes.
pub fn mdom_exact(g: &MarkedGraph, budget: u64) -> Result<DominatingWitness, SolverError> {
    let mut set = Vec::new();
    let mut optimal = true;
    let mut remaining = budget;
    for comp in g.components() {
        if comp.iter().all(|&v| g.is_marked(v)) {
            continue;
        }
        let mut local = MarkedGraph::new(comp.len());
        let index = |v: VertexId| comp.binary_search(&v).expect("component member");
        for (i, &v) in comp.iter().enumerate() {
            local.set_marked(i, g.is_marked(v));
            for w in g.neighbors(v) {
                let j = index(w);
                if i < j {
                    local.add_edge(i, j).expect("induced subgraph is subcubic");
                }
            }
        }
        let (best, done, used) = solve_component(&local, remaining);
        remaining = remaining.saturating_sub(used);
        optimal &= done;
        set.extend(best.into_iter().map(|i| comp[i]));
    }
    set.sort_unstable();
    let witness = DominatingWitness {
        size: set.len(),
        set,
        optimal,
    };
    if optimal {
        Ok(witness)
    } else {
        Err(SolverError::BudgetExceeded { incumbent: witness })
    }
}

/// Marked domination number under the default budget.
pub fn mdom(g: &MarkedGraph) -> Result<usize, SolverError> {
    mdom_exact(g, DEFAULT_BUDGET).map(|w| w.size)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ThirdBound {
    pub holds: bool,
    pub gamma: usize,
    pub n: usize,
}

/// Checks `3 γ(g) <= n` for an unmarked graph.
pub fn verify_third_bound(g: &MarkedGraph) -> Result<ThirdBound, SolverError> {
    verify_third_bound_with_budget(g, DEFAULT_BUDGET)
}

pub fn verify_third_bound_with_budget(g: &MarkedGraph, budget: u64) -> Result<ThirdBound, SolverError> {
    if g.marked_count() > 0 {
        return Err(SolverError::MarkedInput);
    }
    let w = mdom_exact(g, budget)?;
    Ok(ThirdBound {
        holds: 3 * w.size <= g.n(),
        gamma: w.size,
        n: g.n(),
    })
}
