//! The colored multigraph on the degree-3 vertices.
//!
//! Every maximal 2-path becomes one colored edge between the degree-3
//! vertices it joins: order 1 or 4 gives a green edge, order 2 or 5 a red
//! edge, with orders 1 and 2 short and 4 and 5 long. Direct adjacencies
//! between degree-3 vertices are black edges. For an edge `uv` the interior
//! vertex at position `i` counted from `u` is written `(uv)_i`.

use crate::graph::{maximal_two_paths, MarkedGraph, VertexId};
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeColor {
    Black,
    Red,
    Green,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeLength {
    Short,
    Long,
    #[serde(rename = "na")]
    NotApplicable,
}

/// Color and length of a 2-path of the given order, if admissible.
pub fn classify_order(order: usize) -> Option<(EdgeColor, EdgeLength)> {
    match order {
        0 => Some((EdgeColor::Black, EdgeLength::NotApplicable)),
        1 => Some((EdgeColor::Green, EdgeLength::Short)),
        2 => Some((EdgeColor::Red, EdgeLength::Short)),
        4 => Some((EdgeColor::Green, EdgeLength::Long)),
        5 => Some((EdgeColor::Red, EdgeLength::Long)),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColoredEdge {
    #[serde(skip)]
    pub id: usize,
    pub u: VertexId,
    pub v: VertexId,
    pub color: EdgeColor,
    pub length: EdgeLength,
    /// Interior vertices from `u` to `v`; empty for black edges.
    pub path: Vec<VertexId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub marked_interior: Option<VertexId>,
}

impl ColoredEdge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    /// Interior vertices listed from endpoint `from`.
    pub fn path_from(&self, from: VertexId) -> Vec<VertexId> {
        if from == self.u {
            self.path.clone()
        } else {
            self.path.iter().rev().copied().collect()
        }
    }

    /// The interior vertex `(from, other)_i`, 1-based.
    pub fn interior(&self, from: VertexId, i: usize) -> VertexId {
        assert!(i >= 1 && i <= self.path.len(), "interior index out of range");
        if from == self.u {
            self.path[i - 1]
        } else {
            self.path[self.path.len() - i]
        }
    }

    pub fn is_long(&self) -> bool {
        self.length == EdgeLength::Long
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("vertex {0} has degree {1}; only degrees 2 and 3 are allowed")]
    BadDegrees(VertexId, usize),
    #[error("maximal 2-path starting at {first} has order {order}")]
    BadTwoPathOrder { first: VertexId, order: usize },
    #[error("component of vertex {0} is a cycle of degree-2 vertices")]
    DegreeTwoCycleComponent(VertexId),
    #[error("marked vertex {0} is a degree-3 vertex, sits on a short path, or shares its path with another mark")]
    BadMarks(VertexId),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColoredMultigraph {
    pub nodes: Vec<VertexId>,
    pub edges: Vec<ColoredEdge>,
    #[serde(skip)]
    incidence: BTreeMap<VertexId, Vec<usize>>,
}

impl ColoredMultigraph {
    pub fn build(g: &MarkedGraph) -> Result<Self, BuildError> {
        for v in g.vertices() {
            let d = g.degree(v);
            if d != 2 && d != 3 {
                return Err(BuildError::BadDegrees(v, d));
            }
            if d == 3 && g.is_marked(v) {
                return Err(BuildError::BadMarks(v));
            }
        }
        let report = maximal_two_paths(g);
        if let Some(c) = report.cycle_components.first() {
            return Err(BuildError::DegreeTwoCycleComponent(c[0]));
        }
        let nodes: Vec<VertexId> = g.vertices().filter(|&v| g.degree(v) == 3).collect();
        let mut edges = Vec::new();
        for (u, v) in g.edges() {
            if g.degree(u) == 3 && g.degree(v) == 3 {
                edges.push(ColoredEdge {
                    id: 0,
                    u,
                    v,
                    color: EdgeColor::Black,
                    length: EdgeLength::NotApplicable,
                    path: Vec::new(),
                    marked_interior: None,
                });
            }
        }
        for p in report.paths {
            let order = p.order();
            let (color, length) = classify_order(order).ok_or(BuildError::BadTwoPathOrder {
                first: p.vertices[0],
                order,
            })?;
            let marks: Vec<VertexId> = p.vertices.iter().copied().filter(|&x| g.is_marked(x)).collect();
            let allowed = if length == EdgeLength::Long { 1 } else { 0 };
            if marks.len() > allowed {
                return Err(BuildError::BadMarks(marks[allowed]));
            }
            edges.push(ColoredEdge {
                id: 0,
                u: p.end_attachments[0],
                v: p.end_attachments[1],
                color,
                length,
                path: p.vertices,
                marked_interior: marks.first().copied(),
            });
        }
        edges.sort_by(|a, b| (a.u, a.v, a.color, &a.path).cmp(&(b.u, b.v, b.color, &b.path)));
        let mut incidence: BTreeMap<VertexId, Vec<usize>> = nodes.iter().map(|&x| (x, Vec::new())).collect();
        for (i, e) in edges.iter_mut().enumerate() {
            e.id = i;
            incidence.get_mut(&e.u).expect("endpoint is a node").push(i);
            if e.v != e.u {
                incidence.get_mut(&e.v).expect("endpoint is a node").push(i);
            } else {
                incidence.get_mut(&e.u).expect("endpoint is a node").push(i);
            }
        }
        Ok(ColoredMultigraph {
            nodes,
            edges,
            incidence,
        })
    }

    /// Edge ids incident with `node`; a loop appears twice.
    pub fn incident(&self, node: VertexId) -> &[usize] {
        self.incidence.get(&node).map_or(&[], Vec::as_slice)
    }

    pub fn edge(&self, id: usize) -> &ColoredEdge {
        &self.edges[id]
    }

    pub fn is_node(&self, v: VertexId) -> bool {
        self.incidence.contains_key(&v)
    }

    /// Incident edges of `node` with the given color.
    pub fn incident_with(&self, node: VertexId, color: EdgeColor) -> Vec<usize> {
        self.incident(node)
            .iter()
            .copied()
            .filter(|&e| self.edges[e].color == color)
            .collect()
    }

    /// Edges of the underlying graph obtained by expanding every colored
    /// edge back into its path, sorted.
    pub fn expand_edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for e in &self.edges {
            let mut seq = vec![e.u];
            seq.extend(&e.path);
            seq.push(e.v);
            for w in seq.windows(2) {
                out.push((w[0].min(w[1]), w[0].max(w[1])));
            }
        }
        out.sort_unstable();
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("multigraph serializes")
    }
}

/// A loop or a pair of parallel edges, labelled by the case number of the
/// simplicity argument: 1 loop, 2 black and red, 3 black and green, 4 two
/// greens, 5 two reds, 6 red and green.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicityFinding {
    pub case: u8,
    pub edges: Vec<usize>,
}

fn parallel_case(a: EdgeColor, b: EdgeColor) -> u8 {
    use EdgeColor::*;
    match (a.min(b), a.max(b)) {
        (Black, Red) => 2,
        (Black, Green) => 3,
        (Green, Green) => 4,
        (Red, Red) => 5,
        (Red, Green) => 6,
        (Black, Black) => unreachable!("the underlying graph is simple"),
        _ => unreachable!("colors are ordered"),
    }
}

pub fn simplicity_findings(m: &ColoredMultigraph) -> Vec<SimplicityFinding> {
    let mut out = Vec::new();
    for e in &m.edges {
        if e.is_loop() {
            out.push(SimplicityFinding {
                case: 1,
                edges: vec![e.id],
            });
        }
    }
    for (i, a) in m.edges.iter().enumerate() {
        if a.is_loop() {
            continue;
        }
        for b in &m.edges[i + 1..] {
            if !b.is_loop() && (a.u, a.v) == (b.u, b.v) {
                out.push(SimplicityFinding {
                    case: parallel_case(a.color, b.color),
                    edges: vec![a.id, b.id],
                });
            }
        }
    }
    out
}

/// Nodes meeting two or more edges of one color, and green-red-green paths
/// on four distinct nodes given as edge triples.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MatchingFindings {
    pub green_violations: Vec<VertexId>,
    pub red_violations: Vec<VertexId>,
    pub green_red_green: Vec<[usize; 3]>,
}

pub fn matching_findings(m: &ColoredMultigraph) -> MatchingFindings {
    let mut f = MatchingFindings::default();
    for &x in &m.nodes {
        if m.incident_with(x, EdgeColor::Green).len() >= 2 {
            f.green_violations.push(x);
        }
        if m.incident_with(x, EdgeColor::Red).len() >= 2 {
            f.red_violations.push(x);
        }
    }
    for red in m.edges.iter().filter(|e| e.color == EdgeColor::Red && !e.is_loop()) {
        let (u2, u3) = (red.u, red.v);
        for &g1 in &m.incident_with(u2, EdgeColor::Green) {
            for &g2 in &m.incident_with(u3, EdgeColor::Green) {
                let u1 = m.edge(g1).other(u2);
                let u4 = m.edge(g2).other(u3);
                let nodes = [u1, u2, u3, u4];
                let distinct = (0..4).all(|i| (i + 1..4).all(|j| nodes[i] != nodes[j]));
                if distinct {
                    f.green_red_green.push([g1, red.id, g2]);
                }
            }
        }
    }
    f
}

pub fn long_edge_findings(m: &ColoredMultigraph) -> Vec<usize> {
    m.edges.iter().filter(|e| e.is_long()).map(|e| e.id).collect()
}

/// Walk from degree-3 vertex `u` into neighbor `first` along degree-2
/// vertices: the interior vertices met and the vertex where the walk stops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub start: VertexId,
    pub interior: Vec<VertexId>,
    pub end: VertexId,
}

impl Chain {
    /// Color and length when the chain joins two degree-3 vertices with an
    /// admissible order.
    pub fn class(&self, g: &MarkedGraph) -> Option<(EdgeColor, EdgeLength)> {
        if g.degree(self.end) != 3 || self.interior.contains(&self.start) {
            return None;
        }
        classify_order(self.interior.len())
    }

    pub fn color(&self, g: &MarkedGraph) -> Option<EdgeColor> {
        self.class(g).map(|c| c.0)
    }

    pub fn is_long(&self, g: &MarkedGraph) -> bool {
        matches!(self.class(g), Some((_, EdgeLength::Long)))
    }

    /// `(start end)_i`, 1-based.
    pub fn at(&self, i: usize) -> VertexId {
        self.interior[i - 1]
    }

    pub fn marked_interior(&self, g: &MarkedGraph) -> Vec<VertexId> {
        self.interior.iter().copied().filter(|&x| g.is_marked(x)).collect()
    }
}

pub fn chain(g: &MarkedGraph, start: VertexId, first: VertexId) -> Chain {
    let mut interior = Vec::new();
    let (mut prev, mut cur) = (start, first);
    while g.degree(cur) == 2 && cur != start {
        interior.push(cur);
        let next = g.neighbors(cur).find(|&x| x != prev).expect("degree 2");
        prev = cur;
        cur = next;
    }
    Chain {
        start,
        interior,
        end: cur,
    }
}

/// The chains leaving `u`, one per neighbor, in neighbor order.
pub fn chains_at(g: &MarkedGraph, u: VertexId) -> Vec<Chain> {
    g.neighbors(u).map(|w| chain(g, u, w)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    #[test]
    fn cube_is_all_black() {
        let m = ColoredMultigraph::build(&cube()).unwrap();
        assert_eq!(m.nodes.len(), 8);
        assert_eq!(m.edges.len(), 12);
        assert!(m.edges.iter().all(|e| e.color == EdgeColor::Black));
        assert!(simplicity_findings(&m).is_empty());
        assert!(long_edge_findings(&m).is_empty());
    }

    #[test]
    fn subdivision_colors() {
        let expected = [
            (1, EdgeColor::Green, EdgeLength::Short),
            (2, EdgeColor::Red, EdgeLength::Short),
            (4, EdgeColor::Green, EdgeLength::Long),
            (5, EdgeColor::Red, EdgeLength::Long),
        ];
        for (times, color, length) in expected {
            let mut g = complete4();
            subdivide(&mut g, 0, 1, times);
            let m = ColoredMultigraph::build(&g).unwrap();
            let colored: Vec<_> = m.edges.iter().filter(|e| e.color != EdgeColor::Black).collect();
            assert_eq!(colored.len(), 1);
            assert_eq!((colored[0].color, colored[0].length), (color, length));
            assert_eq!(m.edges.len(), 6);
            assert_eq!(m.expand_edges(), g.edges());
            let longs = long_edge_findings(&m);
            assert_eq!(longs.len(), usize::from(length == EdgeLength::Long));
        }
        let mut g = complete4();
        subdivide(&mut g, 0, 1, 3);
        assert_eq!(
            ColoredMultigraph::build(&g),
            Err(BuildError::BadTwoPathOrder { first: 4, order: 3 })
        );
    }

    #[test]
    fn build_errors() {
        assert_eq!(ColoredMultigraph::build(&path(3)), Err(BuildError::BadDegrees(0, 1)));
        assert_eq!(
            ColoredMultigraph::build(&cycle(5)),
            Err(BuildError::DegreeTwoCycleComponent(0))
        );
    }

    #[test]
    fn triple_parallel_edges() {
        // 0 and 1 joined by a black edge, a red path 0-2-3-1 and a green path 0-4-1
        let g = MarkedGraph::from_edges(5, &[(0, 1), (0, 2), (2, 3), (3, 1), (0, 4), (4, 1)]).unwrap();
        let m = ColoredMultigraph::build(&g).unwrap();
        let mut cases: Vec<u8> = simplicity_findings(&m).iter().map(|f| f.case).collect();
        cases.sort_unstable();
        assert_eq!(cases, vec![2, 3, 6]);
        let red = m.incident_with(0, EdgeColor::Red)[0];
        assert_eq!(m.edge(red).interior(0, 1), 2);
        assert_eq!(m.edge(red).interior(1, 1), 3);
        let f = matching_findings(&m);
        assert!(f.green_violations.is_empty() && f.red_violations.is_empty());
        assert_eq!(m.expand_edges(), g.edges());
    }

    #[test]
    fn loops_and_matching_violations() {
        // 0 carries a red loop 0-1-2-0 and a black edge to 3; 3 has two green
        // paths to 4, and 4 also meets 5 whose loop is green of order 4
        let mut g = MarkedGraph::new(0);
        for _ in 0..6 {
            g.add_vertex(false);
        }
        let add = |g: &mut MarkedGraph, a, b| g.add_edge(a, b).unwrap();
        add(&mut g, 0, 1);
        add(&mut g, 1, 2);
        add(&mut g, 2, 0);
        add(&mut g, 0, 3);
        for _ in 0..2 {
            let x = g.add_vertex(false);
            add(&mut g, 3, x);
            add(&mut g, x, 4);
        }
        add(&mut g, 4, 5);
        let mut prev = 5;
        for _ in 0..4 {
            let x = g.add_vertex(false);
            add(&mut g, prev, x);
            prev = x;
        }
        add(&mut g, prev, 5);
        let m = ColoredMultigraph::build(&g).unwrap();
        let findings = simplicity_findings(&m);
        let loops = findings.iter().filter(|f| f.case == 1).count();
        assert_eq!(loops, 2);
        assert!(findings.iter().any(|f| f.case == 4));
        let f = matching_findings(&m);
        assert_eq!(f.green_violations, vec![3, 4, 5]);
        assert_eq!(f.red_violations, vec![0]);
        assert_eq!(long_edge_findings(&m).len(), 1);
        assert_eq!(m.incident(5).len(), 3);
    }

    #[test]
    fn green_red_green_path() {
        // nodes 0-1 green, 1-2 red, 2-3 green, plus red 0-2, red 1-3, black 0-3
        let mut g = MarkedGraph::new(0);
        let nodes: Vec<_> = (0..4).map(|_| g.add_vertex(false)).collect();
        let join = |g: &mut MarkedGraph, a, b, k| {
            let mut prev = a;
            for _ in 0..k {
                let x = g.add_vertex(false);
                g.add_edge(prev, x).unwrap();
                prev = x;
            }
            g.add_edge(prev, b).unwrap();
        };
        join(&mut g, nodes[0], nodes[1], 1);
        join(&mut g, nodes[1], nodes[2], 2);
        join(&mut g, nodes[2], nodes[3], 1);
        // close everything with black edges and red paths to reach degree 3
        join(&mut g, nodes[0], nodes[3], 0);
        join(&mut g, nodes[0], nodes[2], 2);
        join(&mut g, nodes[1], nodes[3], 2);
        let m = ColoredMultigraph::build(&g).unwrap();
        let f = matching_findings(&m);
        // each of the three red edges joins the two green edges
        assert_eq!(f.green_red_green.len(), 3);
        for [g1, r, g2] in f.green_red_green {
            assert_eq!(m.edge(g1).color, EdgeColor::Green);
            assert_eq!(m.edge(r).color, EdgeColor::Red);
            assert_eq!(m.edge(g2).color, EdgeColor::Green);
        }
    }

    #[test]
    fn marks_are_checked() {
        let mut g = complete4();
        let inner = subdivide(&mut g, 0, 1, 4);
        g.set_marked(inner[1], true);
        let m = ColoredMultigraph::build(&g).unwrap();
        assert_eq!(m.edges.iter().find_map(|e| e.marked_interior), Some(inner[1]));
        g.set_marked(inner[2], true);
        assert_eq!(ColoredMultigraph::build(&g), Err(BuildError::BadMarks(inner[2])));
        let mut k = complete4();
        k.set_marked(0, true);
        assert_eq!(ColoredMultigraph::build(&k), Err(BuildError::BadMarks(0)));
    }

    #[test]
    fn chains_follow_degree_two_vertices() {
        let mut g = complete4();
        let inner = subdivide(&mut g, 0, 1, 2);
        let cs = chains_at(&g, 0);
        let c = cs.iter().find(|c| c.end == 1).unwrap();
        assert_eq!(c.interior, inner);
        assert_eq!(c.color(&g), Some(EdgeColor::Red));
        assert_eq!(c.at(1), inner[0]);
        let p = path(4);
        assert_eq!(chain(&p, 0, 1).end, 3);
        assert_eq!(chain(&p, 0, 1).class(&p), None);
    }

    #[test]
    fn json_dump_lists_edges() {
        let mut g = complete4();
        subdivide(&mut g, 2, 3, 1);
        let j = ColoredMultigraph::build(&g).unwrap().to_json();
        let edges = j["edges"].as_array().unwrap();
        assert_eq!(edges.len(), 6);
        assert!(edges.iter().any(|e| e["color"] == "green" && e["length"] == "short"));
    }
}
