//! Maximal 2-paths: paths all of whose vertices have degree 2.

use super::{MarkedGraph, VertexId};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoPath {
    /// Path vertices in order; every one has degree 2.
    pub vertices: Vec<VertexId>,
    pub maximal: bool,
    /// Off-path neighbors of the first and last vertex, in that order.
    pub end_attachments: [VertexId; 2],
}

impl TwoPath {
    pub fn order(&self) -> usize {
        self.vertices.len()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TwoPathReport {
    pub paths: Vec<TwoPath>,
    /// Components that are cycles of degree-2 vertices, in cyclic order.
    pub cycle_components: Vec<Vec<VertexId>>,
}

/// Walks from `prev` into `cur` along degree-2 vertices; returns the visited
/// degree-2 vertices and the first vertex of other degree, or `None` when
/// the walk returns to `stop`.
fn walk(g: &MarkedGraph, stop: VertexId, mut prev: VertexId, mut cur: VertexId) -> (Vec<VertexId>, Option<VertexId>) {
    let mut seen = Vec::new();
    loop {
        if cur == stop {
            return (seen, None);
        }
        if g.degree(cur) != 2 {
            return (seen, Some(cur));
        }
        seen.push(cur);
        let next = g
            .neighbors(cur)
            .find(|&x| x != prev)
            .expect("degree-2 vertex has another neighbor");
        prev = cur;
        cur = next;
    }
}

pub fn maximal_two_paths(g: &MarkedGraph) -> TwoPathReport {
    let mut done = vec![false; g.n()];
    let mut report = TwoPathReport::default();
    for v in g.vertices() {
        if done[v] || g.degree(v) != 2 {
            continue;
        }
        let nb = g.neighbor_vec(v);
        let (forward, end_b) = walk(g, v, v, nb[1]);
        let Some(end_b) = end_b else {
            let mut cyc = vec![v];
            cyc.extend(forward);
            for &x in &cyc {
                done[x] = true;
            }
            report.cycle_components.push(cyc);
            continue;
        };
        let (backward, end_a) = walk(g, v, v, nb[0]);
        let end_a = end_a.expect("an open 2-path cannot close on itself");
        let mut vertices: Vec<VertexId> = backward.into_iter().rev().collect();
        vertices.push(v);
        vertices.extend(forward);
        for &x in &vertices {
            done[x] = true;
        }
        let mut ends = [end_a, end_b];
        let first = vertices[0];
        let last = *vertices.last().expect("nonempty");
        if (ends[0], first) > (ends[1], last) {
            vertices.reverse();
            ends.swap(0, 1);
        }
        report.paths.push(TwoPath {
            vertices,
            maximal: true,
            end_attachments: ends,
        });
    }
    report
}
