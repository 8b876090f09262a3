//! Exhaustive existence search for cubic graphs under cycle constraints.
//!
//! Vertices are completed in increasing order; each new edge `vw` is
//! rejected when some path from `v` to `w` closes a cycle that is too short
//! or of a forbidden length. Untouched vertices are interchangeable, so only
//! the first of them is ever tried. When the girth bound is at least 5 the
//! radius-2 ball around vertex 0 is fixed in advance.

use super::MarkedGraph;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("cubic graphs need an even order of at least 4, got {0}")]
    BadOrder(usize),
    #[error("search exceeded its budget of {0} nodes")]
    BudgetExceeded(u64),
}

/// Constraints of a cubic graph family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicFamily {
    pub min_girth: usize,
    pub forbidden: Vec<usize>,
    pub bipartite: bool,
}

struct Search<'a> {
    n: usize,
    adj: Vec<Vec<usize>>,
    touched: Vec<bool>,
    side: Vec<Option<bool>>,
    family: &'a CubicFamily,
    longest_bad: usize,
    on_path: Vec<bool>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn bad_cycle(&self, len: usize) -> bool {
        len < self.family.min_girth || self.family.forbidden.contains(&len)
    }

    /// True when some path `u ~> target` of `len` edges so far extends to a
    /// path that would close a bad cycle with the edge `target - start`.
    fn closes_bad(&mut self, u: usize, target: usize, len: usize) -> bool {
        if u == target {
            return self.bad_cycle(len + 1);
        }
        if len + 1 >= self.longest_bad {
            return false;
        }
        self.on_path[u] = true;
        let mut bad = false;
        for i in 0..self.adj[u].len() {
            let x = self.adj[u][i];
            if !self.on_path[x] && self.closes_bad(x, target, len + 1) {
                bad = true;
                break;
            }
        }
        self.on_path[u] = false;
        bad
    }

    fn link(&mut self, v: usize, w: usize) {
        self.adj[v].push(w);
        self.adj[w].push(v);
    }

    fn unlink(&mut self, v: usize, w: usize) {
        self.adj[v].pop();
        self.adj[w].pop();
    }

    fn extend(&mut self) -> Result<bool, SearchError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(SearchError::BudgetExceeded(self.budget));
        }
        let Some(v) = (0..self.n).find(|&v| self.adj[v].len() < 3) else {
            return Ok(true);
        };
        // an untouched `v` starts a new component
        let fresh_component = self.side[v].is_none();
        if fresh_component {
            self.side[v] = Some(false);
            self.touched[v] = true;
        }
        let mut fresh_tried = false;
        for w in v + 1..self.n {
            if self.adj[w].len() >= 3 || self.adj[v].contains(&w) {
                continue;
            }
            if !self.touched[w] {
                if fresh_tried {
                    continue;
                }
                fresh_tried = true;
            }
            if self.family.bipartite {
                if let (Some(a), Some(b)) = (self.side[v], self.side[w]) {
                    if a == b {
                        continue;
                    }
                }
            }
            if self.closes_bad(v, w, 0) {
                continue;
            }
            let (was_touched, was_side) = (self.touched[w], self.side[w]);
            self.touched[w] = true;
            if self.side[w].is_none() {
                self.side[w] = self.side[v].map(|s| !s);
            }
            self.link(v, w);
            if self.extend()? {
                return Ok(true);
            }
            self.unlink(v, w);
            self.touched[w] = was_touched;
            self.side[w] = was_side;
        }
        if fresh_component {
            self.side[v] = None;
            self.touched[v] = false;
        }
        Ok(false)
    }
}

/// Some cubic graph on `n` vertices in `family`, or `None` when no such
/// graph exists. The graph found need not be connected.
pub fn find_cubic_in_family(n: usize, family: &CubicFamily, budget: u64) -> Result<Option<MarkedGraph>, SearchError> {
    if n < 4 || n % 2 == 1 {
        return Err(SearchError::BadOrder(n));
    }
    let longest_bad = family
        .forbidden
        .iter()
        .copied()
        .chain(std::iter::once(family.min_girth.saturating_sub(1)))
        .max()
        .unwrap_or(0);
    let mut s = Search {
        n,
        adj: vec![Vec::with_capacity(3); n],
        touched: vec![false; n],
        side: vec![None; n],
        family,
        longest_bad,
        on_path: vec![false; n],
        nodes: 0,
        budget,
    };
    s.side[0] = Some(false);
    s.touched[0] = true;
    let seeded: &[(usize, usize)] = if family.min_girth >= 5 && n >= 10 {
        &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 6), (2, 7), (3, 8), (3, 9)]
    } else {
        &[(0, 1), (0, 2), (0, 3)]
    };
    for &(a, b) in seeded {
        s.link(a, b);
        s.touched[b] = true;
        s.side[b] = s.side[a].map(|x| !x);
    }
    if !s.extend()? {
        return Ok(None);
    }
    let mut g = MarkedGraph::new(n);
    for v in 0..n {
        for &w in &s.adj[v] {
            if v < w {
                g.add_edge(v, w).expect("search keeps degrees at most 3");
            }
        }
    }
    Ok(Some(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{girth, has_cycle_of_length, Girth};

    fn family(min_girth: usize, forbidden: &[usize], bipartite: bool) -> CubicFamily {
        CubicFamily {
            min_girth,
            forbidden: forbidden.to_vec(),
            bipartite,
        }
    }

    #[test]
    fn cage_orders() {
        // girth-5 cage has 10 vertices, girth-6 has 14, girth-7 has 24
        let g5 = family(5, &[], false);
        assert!(find_cubic_in_family(8, &g5, 1 << 20).unwrap().is_none());
        assert!(find_cubic_in_family(10, &g5, 1 << 20).unwrap().is_some());
        let g6 = family(6, &[], false);
        assert!(find_cubic_in_family(12, &g6, 1 << 20).unwrap().is_none());
        let heawood_like = find_cubic_in_family(14, &g6, 1 << 20).unwrap().unwrap();
        assert_eq!(girth(&heawood_like), Girth::Finite(6));
        let g7 = family(7, &[], false);
        assert!(find_cubic_in_family(22, &g7, 1 << 24).unwrap().is_none());
        assert!(find_cubic_in_family(24, &g7, 1 << 24).unwrap().is_some());
    }

    #[test]
    fn bipartite_constraint() {
        let b = family(4, &[], true);
        let g = find_cubic_in_family(6, &b, 1 << 20).unwrap().unwrap();
        assert!(g.is_bipartite());
        assert!(find_cubic_in_family(4, &b, 1 << 20).unwrap().is_none());
    }

    #[test]
    fn forbidden_lengths_respected() {
        let f = family(5, &[6], false);
        if let Some(g) = find_cubic_in_family(16, &f, 1 << 22).unwrap() {
            assert!(!has_cycle_of_length(&g, 6).unwrap());
        }
    }
}
