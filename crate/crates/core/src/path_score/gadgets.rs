//! Concrete extremity gadgets and the literal strategy excisions on them,
//! used to recompute the strategy surplus table from vertex weights.

use super::{classify_extremity, find_max_paths, ExtremityStructure, ExtremityType, PathEnd, PathScoreError, Strategy};
use crate::graph::{excise, MarkedGraph, VertexId};
use crate::multigraph::ColoredMultigraph;
use crate::weights::{vertex_weight, weight};
use serde::Serialize;
use std::collections::BTreeSet;

/// Attaches a new cubic cap to `x`: a vertex adjacent to `x` and to the two
/// degree-2 vertices of a diamond. Every cap vertex ends with degree 3.
pub fn attach_cap(g: &mut MarkedGraph, x: VertexId) -> VertexId {
    let t = g.add_vertex(false);
    let d: Vec<VertexId> = (0..4).map(|_| g.add_vertex(false)).collect();
    for (a, b) in [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
        g.add_edge(d[a], d[b]).expect("fresh vertices");
    }
    g.add_edge(t, d[0]).expect("fresh vertices");
    g.add_edge(t, d[1]).expect("fresh vertices");
    g.add_edge(x, t).expect("x has room for a cap");
    t
}

/// Gives every listed vertex degree 3 by attaching caps.
pub fn cap_all(g: &mut MarkedGraph, core: &[VertexId]) {
    for &x in core {
        while g.degree(x) < 3 {
            attach_cap(g, x);
        }
    }
}

/// Joins `a` and `b` by a path with `interior` new degree-2 vertices.
pub fn join(g: &mut MarkedGraph, a: VertexId, b: VertexId, interior: usize) {
    let mut prev = a;
    for _ in 0..interior {
        let x = g.add_vertex(false);
        g.add_edge(prev, x).expect("fresh vertex");
        prev = x;
    }
    g.add_edge(prev, b).expect("gadget edges are distinct");
}

/// Builds an extremity structure of the given type around `u`, which must
/// already carry its green path edge. All new branch vertices are capped.
pub fn attach_extremity(g: &mut MarkedGraph, u: VertexId, kind: ExtremityType) {
    let mut node = || g.add_vertex(false);
    let (v, w, y, yp) = (node(), node(), node(), node());
    join(g, u, v, 0);
    join(g, v, y, 2);
    join(g, y, yp, 1);
    let mut core = vec![v, w, y, yp];
    match kind {
        ExtremityType::T1 => {
            let z = g.add_vertex(false);
            let zp = g.add_vertex(false);
            join(g, u, w, 0);
            join(g, w, z, 2);
            join(g, z, zp, 1);
            core.extend([z, zp]);
        }
        ExtremityType::T2 => join(g, u, w, 0),
        ExtremityType::T3 => join(g, u, w, 2),
    }
    cap_all(g, &core);
}

/// An alternating path `u1 u1' ... uk uk'` on vertices `0..2k` with the
/// given extremity structures. Internal path vertices keep one free slot
/// for the caller to decorate before calling [`cap_all`] on the nodes.
pub fn path_gadget(k: usize, start: ExtremityType, end: ExtremityType) -> (MarkedGraph, Vec<VertexId>) {
    assert!(k >= 1);
    let mut g = MarkedGraph::new(2 * k);
    let nodes: Vec<VertexId> = (0..2 * k).collect();
    for i in 0..k {
        join(&mut g, nodes[2 * i], nodes[2 * i + 1], 1);
        if i + 1 < k {
            join(&mut g, nodes[2 * i + 1], nodes[2 * i + 2], 0);
        }
    }
    attach_extremity(&mut g, nodes[0], start);
    attach_extremity(&mut g, nodes[2 * k - 1], end);
    (g, nodes)
}

/// A graph whose vertex 0 is the first extremity of a maximal alternating
/// path and carries a structure of the requested type.
pub fn extremity_gadget(kind: ExtremityType) -> MarkedGraph {
    let mut g = MarkedGraph::new(2);
    join(&mut g, 0, 1, 1);
    attach_extremity(&mut g, 0, kind);
    cap_all(&mut g, &[1]);
    g
}

/// The removal, marking and dominators of one strategy at one extremity.
/// `excluded` is the vertex whose weight change is left to the path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrategyExcision {
    pub remove: Vec<VertexId>,
    pub mark: Vec<VertexId>,
    pub dominators: Vec<VertexId>,
    pub excluded: VertexId,
    pub alpha: u64,
}

pub fn strategy_excision(
    g: &MarkedGraph,
    m: &ColoredMultigraph,
    s: &ExtremityStructure,
    strategy: Strategy,
) -> StrategyExcision {
    let inner = |e: usize, from: VertexId| m.edge(e).path_from(from);
    let vy = inner(s.red_vy, s.v);
    let v1 = inner(s.green_ux, s.u)[0];
    let y_green = || inner(s.green_y.expect("types 1 and 2 give y a green edge"), s.y);
    let mut remove: Vec<VertexId>;
    let mut mark: Vec<VertexId> = Vec::new();
    let dominators: Vec<VertexId>;
    let alpha;
    let excluded;
    match (s.kind, strategy) {
        (ExtremityType::T1, Strategy::KeepFirstInterior) => {
            let wz = inner(s.red_w.expect("type 1 has wz"), s.w);
            remove = vec![s.u, s.v, s.w, s.y];
            remove.extend(&vy);
            remove.extend(y_green());
            remove.extend(&wz);
            mark_leftover_neighbors(g, &[s.v, s.y], &remove, &mut mark);
            dominators = vec![s.v, s.y, wz[0]];
            alpha = 3;
            excluded = v1;
        }
        (ExtremityType::T1, Strategy::KeepFirstPartner) => {
            let wz = inner(s.red_w.expect("type 1 has wz"), s.w);
            remove = vec![s.u, s.v, v1, s.w];
            remove.extend(&vy);
            remove.extend(&wz);
            mark = vec![s.y, s.z.expect("type 1 has z")];
            dominators = vec![s.u, vy[1], wz[1]];
            alpha = 3;
            excluded = s.x;
        }
        (ExtremityType::T2, Strategy::KeepFirstInterior) => {
            remove = vec![s.u, s.v, s.y];
            remove.extend(&vy);
            remove.extend(y_green());
            mark_leftover_neighbors(g, &[s.v, s.y], &remove, &mut mark);
            dominators = vec![s.v, s.y];
            alpha = 2;
            excluded = v1;
        }
        (ExtremityType::T2, Strategy::KeepFirstPartner) => {
            remove = vec![s.u, v1, s.v, s.w];
            remove.extend(&vy);
            mark = vec![s.y];
            dominators = vec![s.u, vy[1]];
            alpha = 2;
            excluded = s.x;
        }
        (ExtremityType::T3, Strategy::KeepFirstInterior) => {
            // (vy)_1 rather than (vy)_2: only the former dominates v
            let uw = inner(s.red_w.expect("type 3 has uw"), s.u);
            remove = vec![s.u, s.v];
            remove.extend(&vy);
            remove.extend(&uw);
            dominators = vec![uw[0], vy[0]];
            alpha = 2;
            excluded = v1;
        }
        (ExtremityType::T3, Strategy::KeepFirstPartner) => {
            let uw = inner(s.red_w.expect("type 3 has uw"), s.u);
            remove = vec![s.u, v1, uw[0], s.v];
            remove.extend(&vy);
            mark = vec![s.y];
            dominators = vec![s.u, vy[1]];
            alpha = 2;
            excluded = s.x;
        }
    }
    StrategyExcision {
        remove,
        mark,
        dominators,
        excluded,
        alpha,
    }
}

fn mark_leftover_neighbors(g: &MarkedGraph, centers: &[VertexId], remove: &[VertexId], mark: &mut Vec<VertexId>) {
    for &c in centers {
        for x in g.neighbors(c) {
            if !remove.contains(&x) && !mark.contains(&x) {
                mark.push(x);
            }
        }
    }
}

/// Weight surplus of an excision over `12 alpha`, not counting the weight
/// change of the excluded vertex.
pub fn excision_surplus(g: &MarkedGraph, e: &StrategyExcision) -> i64 {
    let (h, remap) = excise(g, &e.remove, &e.mark);
    let beta = weight(g) as i64 - weight(&h) as i64;
    let before = vertex_weight(g, e.excluded) as i64;
    let after = remap.forward(e.excluded).map_or(0, |x| vertex_weight(&h, x) as i64);
    beta - (before - after) - 12 * e.alpha as i64
}

/// Whether the dominators cover every unmarked vertex that the excision
/// removes or marks, apart from the excluded vertex.
pub fn excision_dominates(g: &MarkedGraph, e: &StrategyExcision) -> bool {
    let covered: BTreeSet<VertexId> = g.closed_neighborhood(&e.dominators);
    e.dominators.len() as u64 <= e.alpha
        && e.remove
            .iter()
            .chain(&e.mark)
            .filter(|&&x| x != e.excluded && !g.is_marked(x))
            .all(|x| covered.contains(x))
}

/// Classified structure at vertex 0 of an extremity gadget.
pub fn gadget_structure(g: &MarkedGraph) -> Result<(ColoredMultigraph, ExtremityStructure), PathScoreError> {
    let m = ColoredMultigraph::build(g).expect("gadgets have an admissible multigraph");
    let paths = find_max_paths(&m)?;
    let path = paths
        .paths
        .iter()
        .find(|p| p.nodes.contains(&0))
        .expect("vertex 0 starts a path");
    let path = if path.nodes[0] == 0 {
        path.clone()
    } else {
        path.reversed()
    };
    let s = classify_extremity(&m, &path, PathEnd::Start)?;
    Ok((m, s))
}
