//! Small graph queries shared by the detectors.

use crate::graph::{MarkedGraph, VertexId};
use crate::multigraph::{chain, EdgeColor};

/// A colored edge of the multigraph seen from one of its ends: the walk from
/// `start` through degree-2 vertices to `end`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Arm {
    pub start: VertexId,
    pub interior: Vec<VertexId>,
    pub end: VertexId,
    pub color: Option<EdgeColor>,
    pub long: bool,
}

impl Arm {
    /// `(start end)_i`, 1-based.
    pub fn at(&self, i: usize) -> VertexId {
        self.interior[i - 1]
    }

    /// The neighbor of `start` on this arm.
    pub fn first(&self) -> VertexId {
        self.interior.first().copied().unwrap_or(self.end)
    }

    pub fn is_loop(&self) -> bool {
        self.start == self.end
    }

    pub fn is(&self, color: EdgeColor) -> bool {
        self.color == Some(color)
    }

    pub fn is_short(&self, color: EdgeColor) -> bool {
        self.is(color) && !self.long
    }

    /// The interior vertex at distance 3 from `start`, present on long arms.
    pub fn long_dominator(&self) -> Option<VertexId> {
        self.long.then(|| self.at(3))
    }
}

pub(crate) fn arm(g: &MarkedGraph, start: VertexId, first: VertexId) -> Arm {
    let c = chain(g, start, first);
    let class = c.class(g);
    Arm {
        start: c.start,
        color: class.map(|k| k.0),
        long: c.is_long(g),
        interior: c.interior,
        end: c.end,
    }
}

/// The three arms at a degree-3 vertex, ordered by first vertex; `None`
/// for other degrees.
pub(crate) fn arms(g: &MarkedGraph, u: VertexId) -> Option<Vec<Arm>> {
    (g.degree(u) == 3).then(|| g.neighbors(u).map(|w| arm(g, u, w)).collect())
}

/// The arm of `u` other than the two whose first vertices are given.
pub(crate) fn third_arm(arms: &[Arm], a: VertexId, b: VertexId) -> Option<&Arm> {
    arms.iter().find(|x| x.first() != a && x.first() != b)
}

/// Neighbors of `v` outside `exclude`.
pub(crate) fn others(g: &MarkedGraph, v: VertexId, exclude: &[VertexId]) -> Vec<VertexId> {
    g.neighbors(v).filter(|w| !exclude.contains(w)).collect()
}

/// Walks from `prev` into `cur` for `steps` more vertices along degree-2
/// vertices, returning the `steps + 1` vertices met from `cur` on, or
/// `None` if a vertex before the last one does not have degree 2.
pub(crate) fn walk(g: &MarkedGraph, prev: VertexId, cur: VertexId, steps: usize) -> Option<Vec<VertexId>> {
    let mut out = vec![cur];
    let (mut p, mut c) = (prev, cur);
    for _ in 0..steps {
        if g.degree(c) != 2 {
            return None;
        }
        let next = g.neighbors(c).find(|&x| x != p)?;
        out.push(next);
        p = c;
        c = next;
    }
    Some(out)
}

pub(crate) fn all_distinct(vs: &[VertexId]) -> bool {
    let mut s = vs.to_vec();
    s.sort_unstable();
    s.windows(2).all(|w| w[0] != w[1])
}

/// Whether `v` is the center of a black star: degree 3 with three black
/// arms.
pub(crate) fn is_black_star(g: &MarkedGraph, v: VertexId) -> bool {
    arms(g, v).is_some_and(|a| a.iter().all(|x| x.is(EdgeColor::Black)))
}

/// Shortest cycles of `g`, canonically oriented, when the girth is `len`.
pub(crate) fn shortest_cycles(g: &MarkedGraph, len: usize) -> Vec<Vec<VertexId>> {
    if crate::graph::girth(g).finite() != Some(len) {
        return Vec::new();
    }
    crate::graph::cycles_of_length(g, len, super::HYPOTHESIS_BUDGET).unwrap_or_default()
}
