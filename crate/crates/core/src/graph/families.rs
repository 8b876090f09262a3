//! Standard small graphs used by tests, benches and the CLI.

use super::{MarkedGraph, VertexId};

/// The cycle `C_n` on vertices `0..n` in cyclic order.
pub fn cycle(n: usize) -> MarkedGraph {
    assert!(n >= 3, "a cycle needs at least three vertices");
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    MarkedGraph::from_edges(n, &edges).expect("cycles are subcubic")
}

/// The path `P_n` on vertices `0..n` in order.
pub fn path(n: usize) -> MarkedGraph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    MarkedGraph::from_edges(n, &edges).expect("paths are subcubic")
}

pub fn complete4() -> MarkedGraph {
    let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    MarkedGraph::from_edges(4, &edges).expect("K4 is cubic")
}

/// Generalized Petersen graph `P(n, k)`: outer cycle `0..n`, inner vertices
/// `n..2n` with `n + i` adjacent to `n + (i + k) mod n`.
pub fn petersen_generalized(n: usize, k: usize) -> MarkedGraph {
    assert!(n >= 3 && k >= 1 && 2 * k < n, "P(n, k) needs 1 <= k < n/2");
    let mut g = MarkedGraph::new(2 * n);
    for i in 0..n {
        g.add_edge(i, (i + 1) % n).expect("outer cycle");
        g.add_edge(i, n + i).expect("spoke");
    }
    for i in 0..n {
        let j = (i + k) % n;
        if !g.has_edge(n + i, n + j) {
            g.add_edge(n + i, n + j).expect("inner star polygon");
        }
    }
    g
}

/// The Heawood graph: incidence graph of the Fano plane, 14 vertices, girth 6.
pub fn heawood() -> MarkedGraph {
    let mut g = cycle(14);
    for i in (0..14).step_by(2) {
        g.add_edge(i, (i + 5) % 14).expect("Heawood chords");
    }
    g
}

/// The 3-dimensional cube `Q_3`.
pub fn cube() -> MarkedGraph {
    let mut g = MarkedGraph::new(8);
    for u in 0..8usize {
        for bit in 0..3 {
            let v = u ^ (1 << bit);
            if u < v {
                g.add_edge(u, v).expect("cube edges");
            }
        }
    }
    g
}

/// Replaces the edge `uv` by a path through `times` new vertices, returned
/// in order from `u` to `v`.
pub fn subdivide(g: &mut MarkedGraph, u: VertexId, v: VertexId, times: usize) -> Vec<VertexId> {
    g.remove_edge(u, v).expect("subdivided edge must exist");
    let mut prev = u;
    let mut inner = Vec::with_capacity(times);
    for _ in 0..times {
        let x = g.add_vertex(false);
        g.add_edge(prev, x).expect("subdivision vertex");
        inner.push(x);
        prev = x;
    }
    g.add_edge(prev, v).expect("subdivision closes");
    inner
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        assert_eq!(cycle(7).edge_count(), 7);
        assert_eq!(path(5).edge_count(), 4);
        let p72 = petersen_generalized(7, 2);
        assert_eq!((p72.n(), p72.edge_count()), (14, 21));
        assert!(p72.is_cubic());
        let h = heawood();
        assert_eq!((h.n(), h.edge_count()), (14, 21));
        assert!(h.is_cubic());
        assert!(cube().is_cubic());
    }

    #[test]
    fn subdivision_appends_vertices() {
        let mut g = complete4();
        let inner = subdivide(&mut g, 0, 1, 2);
        assert_eq!(inner, vec![4, 5]);
        assert!(g.has_edge(0, 4) && g.has_edge(4, 5) && g.has_edge(5, 1));
        assert!(!g.has_edge(0, 1));
    }
}
