//! Maximal alternating green-black paths of the colored multigraph and the
//! scoring used to show none of them survives in a reduced graph.
//!
//! A path `u1 u1' u2 u2' ... uk uk'` starts and ends with a green edge and
//! alternates green `ui ui'` with black `ui' u(i+1)`. Its vertices `ui'`
//! with `i < k` are upper, its vertices `ui` with `i > 1` are lower, and
//! every other multigraph edge at such a vertex is a neighbor edge.

pub mod gadgets;

use crate::graph::VertexId;
use crate::multigraph::{ColoredMultigraph, EdgeColor};
use crate::rational::Rational12;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathScoreError {
    #[error("node {0} meets two green edges; greens must form a matching")]
    GreenNotMatching(VertexId),
    #[error("extremity {0} fits no extremity type; a reduction applies there")]
    Unclassifiable(VertexId),
    #[error("edge {0} is not a neighbor edge of the path")]
    NotNeighborEdge(usize),
}

/// An alternating green-black path, or a cycle when `closed` is set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreenBlackPath {
    /// `u1, u1', u2, u2', ..., uk, uk'`.
    pub nodes: Vec<VertexId>,
    /// Green edge ids, `greens[i]` joins `nodes[2i]` and `nodes[2i+1]`.
    pub greens: Vec<usize>,
    /// Black edge ids, `blacks[i]` joins `nodes[2i+1]` and `nodes[2i+2]`;
    /// for a cycle the last one closes it.
    pub blacks: Vec<usize>,
    pub closed: bool,
}

impl GreenBlackPath {
    /// Number of green edges.
    pub fn k(&self) -> usize {
        self.greens.len()
    }

    pub fn reversed(&self) -> GreenBlackPath {
        assert!(!self.closed, "cycles have no reverse here");
        GreenBlackPath {
            nodes: self.nodes.iter().rev().copied().collect(),
            greens: self.greens.iter().rev().copied().collect(),
            blacks: self.blacks.iter().rev().copied().collect(),
            closed: false,
        }
    }

    fn on_path_edges(&self) -> BTreeSet<usize> {
        self.greens.iter().chain(&self.blacks).copied().collect()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AlternatingDecomposition {
    pub paths: Vec<GreenBlackPath>,
    pub cycles: Vec<GreenBlackPath>,
}

fn green_partners(m: &ColoredMultigraph) -> Result<BTreeMap<VertexId, (usize, VertexId)>, PathScoreError> {
    let mut partner = BTreeMap::new();
    for &x in &m.nodes {
        let greens = m.incident_with(x, EdgeColor::Green);
        match greens.as_slice() {
            [] => {}
            [e] => {
                partner.insert(x, (*e, m.edge(*e).other(x)));
            }
            _ => return Err(PathScoreError::GreenNotMatching(x)),
        }
    }
    Ok(partner)
}

/// Black edges at `x` ordered by the far end, as `(edge, far end)`.
fn blacks_at(m: &ColoredMultigraph, x: VertexId) -> Vec<(usize, VertexId)> {
    let mut out: Vec<_> = m
        .incident_with(x, EdgeColor::Black)
        .into_iter()
        .map(|e| (e, m.edge(e).other(x)))
        .collect();
    out.sort_by_key(|&(e, y)| (y, e));
    out
}

/// Splits the green edges into maximal alternating paths and cycles.
///
/// Each green edge not yet used seeds a path that is extended greedily,
/// first forward and then backward, always through the black edge with
/// the smallest far end; a black edge back to the other end closes a cycle.
pub fn find_max_paths(m: &ColoredMultigraph) -> Result<AlternatingDecomposition, PathScoreError> {
    let partner = green_partners(m)?;
    let mut used = BTreeSet::new();
    let mut out = AlternatingDecomposition::default();
    for e in &m.edges {
        if e.color != EdgeColor::Green || used.contains(&e.id) {
            continue;
        }
        used.insert(e.id);
        let mut nodes = std::collections::VecDeque::from([e.u, e.v]);
        let mut greens = std::collections::VecDeque::from([e.id]);
        let mut blacks = std::collections::VecDeque::new();
        let mut closing = None;
        // forward
        loop {
            let last = *nodes.back().expect("nonempty");
            let first = nodes[0];
            if nodes.len() >= 4 {
                if let Some(&(b, _)) = blacks_at(m, last).iter().find(|&&(_, y)| y == first) {
                    closing = Some(b);
                    break;
                }
            }
            let next = blacks_at(m, last).into_iter().find_map(|(b, y)| {
                let (g, z) = *partner.get(&y)?;
                (!used.contains(&g)).then_some((b, y, g, z))
            });
            let Some((b, y, g, z)) = next else { break };
            used.insert(g);
            blacks.push_back(b);
            greens.push_back(g);
            nodes.push_back(y);
            nodes.push_back(z);
        }
        // backward
        while closing.is_none() {
            let first = nodes[0];
            let next = blacks_at(m, first).into_iter().find_map(|(b, y)| {
                let (g, z) = *partner.get(&y)?;
                (!used.contains(&g)).then_some((b, y, g, z))
            });
            let Some((b, y, g, z)) = next else { break };
            used.insert(g);
            blacks.push_front(b);
            greens.push_front(g);
            nodes.push_front(y);
            nodes.push_front(z);
            let last = *nodes.back().expect("nonempty");
            if let Some(&(b, _)) = blacks_at(m, last).iter().find(|&&(_, y)| y == nodes[0]) {
                closing = Some(b);
            }
        }
        let mut path = GreenBlackPath {
            nodes: nodes.into(),
            greens: greens.into(),
            blacks: blacks.into(),
            closed: false,
        };
        if let Some(b) = closing {
            path.blacks.push(b);
            path.closed = true;
            out.cycles.push(path);
        } else {
            out.paths.push(path);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ExtremityType {
    T1,
    T2,
    T3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Strategy {
    /// Keep the degree-2 vertex of the first green edge for later.
    KeepFirstInterior,
    /// Keep the far end of the first green edge for later.
    KeepFirstPartner,
}

/// Surplus (positive) or deficit (negative) weight left when a strategy
/// handles an extremity of the given type.
pub fn strategy_delta(t: ExtremityType, s: Strategy) -> Rational12 {
    use ExtremityType::*;
    use Strategy::*;
    Rational12::int(match (t, s) {
        (T1, KeepFirstInterior) => 2,
        (T2, KeepFirstInterior) => 1,
        (T3, KeepFirstInterior) => 1,
        (T1, KeepFirstPartner) => -1,
        (T2, KeepFirstPartner) => 0,
        (T3, KeepFirstPartner) => 0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PathEnd {
    Start,
    End,
}

/// The named vertices and edges around an extremity `u` with path neighbor
/// `x`. For types 1 and 2, `uv` and `uw` are black and `vy` is red; type 1
/// adds the red `wz`. For type 3, `uw` is red, `uv` black and `vy` red.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremityStructure {
    pub kind: ExtremityType,
    pub u: VertexId,
    pub x: VertexId,
    pub v: VertexId,
    pub w: VertexId,
    pub y: VertexId,
    pub z: Option<VertexId>,
    pub green_ux: usize,
    pub red_vy: usize,
    /// `wz` for type 1, `uw` for type 3.
    pub red_w: Option<usize>,
    /// Green edge at `y`, when there is one.
    pub green_y: Option<usize>,
}

fn single(m: &ColoredMultigraph, x: VertexId, color: EdgeColor) -> Option<usize> {
    match m.incident_with(x, color).as_slice() {
        [e] if !m.edge(*e).is_loop() => Some(*e),
        _ => None,
    }
}

pub fn classify_extremity(
    m: &ColoredMultigraph,
    path: &GreenBlackPath,
    end: PathEnd,
) -> Result<ExtremityStructure, PathScoreError> {
    let (u, x, green_ux) = match end {
        PathEnd::Start => (path.nodes[0], path.nodes[1], path.greens[0]),
        PathEnd::End => {
            let n = path.nodes.len();
            (
                path.nodes[n - 1],
                path.nodes[n - 2],
                *path.greens.last().expect("nonempty"),
            )
        }
    };
    let fail = Err(PathScoreError::Unclassifiable(u));
    let off: Vec<usize> = m.incident(u).iter().copied().filter(|&e| e != green_ux).collect();
    if off.len() != 2 || off.iter().any(|&e| m.edge(e).is_loop()) {
        return fail;
    }
    let has_green = |a: VertexId| !m.incident_with(a, EdgeColor::Green).is_empty();
    let red_to_green = |a: VertexId| -> Option<(usize, VertexId)> {
        let r = single(m, a, EdgeColor::Red)?;
        let b = m.edge(r).other(a);
        Some((r, b))
    };
    let colors: Vec<EdgeColor> = off.iter().map(|&e| m.edge(e).color).collect();
    match colors.as_slice() {
        [EdgeColor::Black, EdgeColor::Black] => {
            let (a, b) = (m.edge(off[0]).other(u), m.edge(off[1]).other(u));
            if has_green(a) || has_green(b) {
                return fail;
            }
            let ra = red_to_green(a).filter(|&(_, y)| has_green(y));
            let rb = red_to_green(b).filter(|&(_, y)| has_green(y));
            let a_red = !m.incident_with(a, EdgeColor::Red).is_empty();
            let b_red = !m.incident_with(b, EdgeColor::Red).is_empty();
            match (ra, rb) {
                (Some((r1, y)), Some((r2, z))) => Ok(ExtremityStructure {
                    kind: ExtremityType::T1,
                    u,
                    x,
                    v: a,
                    w: b,
                    y,
                    z: Some(z),
                    green_ux,
                    red_vy: r1,
                    red_w: Some(r2),
                    green_y: single(m, y, EdgeColor::Green),
                }),
                (Some((r, y)), None) | (None, Some((r, y))) => {
                    let (v, w, w_red) = if ra.is_some() { (a, b, b_red) } else { (b, a, a_red) };
                    if w_red {
                        return fail;
                    }
                    Ok(ExtremityStructure {
                        kind: ExtremityType::T2,
                        u,
                        x,
                        v,
                        w,
                        y,
                        z: None,
                        green_ux,
                        red_vy: r,
                        red_w: None,
                        green_y: single(m, y, EdgeColor::Green),
                    })
                }
                (None, None) => fail,
            }
        }
        [c0, c1]
            if (*c0, *c1) == (EdgeColor::Black, EdgeColor::Red) || (*c0, *c1) == (EdgeColor::Red, EdgeColor::Black) =>
        {
            let (black, red) = if *c0 == EdgeColor::Black {
                (off[0], off[1])
            } else {
                (off[1], off[0])
            };
            let v = m.edge(black).other(u);
            let w = m.edge(red).other(u);
            if has_green(v) {
                return fail;
            }
            let Some((r, y)) = red_to_green(v) else { return fail };
            if y == u {
                return fail;
            }
            Ok(ExtremityStructure {
                kind: ExtremityType::T3,
                u,
                x,
                v,
                w,
                y,
                z: None,
                green_ux,
                red_vy: r,
                red_w: Some(red),
                green_y: single(m, y, EdgeColor::Green),
            })
        }
        _ => fail,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum NeighborEdgeKind {
    RedIsland,
    GreenIsland,
    GreenIsthmus,
    RedIsthmus,
    BlackDetour,
    SpecialRed,
    SpecialBlack,
    WellBehaved,
}

impl NeighborEdgeKind {
    pub fn is_special(self) -> bool {
        matches!(self, NeighborEdgeKind::SpecialRed | NeighborEdgeKind::SpecialBlack)
    }

    pub fn is_isthmus(self) -> bool {
        matches!(self, NeighborEdgeKind::GreenIsthmus | NeighborEdgeKind::RedIsthmus)
    }
}

/// A classified neighbor edge of a path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NeighborEdge {
    pub edge: usize,
    /// Index into the path's node sequence of the path end of the edge.
    pub position: usize,
    pub upper: bool,
    pub far_end: VertexId,
    pub kind: NeighborEdgeKind,
    /// Identifies the structure the edge belongs to: the far end for red
    /// islands and isthmuses, the green edge id for green islands.
    pub structure: usize,
}

struct PathView<'a> {
    m: &'a ColoredMultigraph,
    on_path: BTreeSet<VertexId>,
    path_edges: BTreeSet<usize>,
}

impl PathView<'_> {
    /// Edges at `v` whose other end lies on the path.
    fn path_adjacency(&self, v: VertexId) -> usize {
        self.m
            .incident(v)
            .iter()
            .filter(|&&e| {
                let edge = self.m.edge(e);
                !edge.is_loop() && self.on_path.contains(&edge.other(v))
            })
            .count()
    }

    fn classify(&self, p: VertexId, e: usize) -> Result<(NeighborEdgeKind, usize), PathScoreError> {
        use NeighborEdgeKind::*;
        let m = self.m;
        let edge = m.edge(e);
        if edge.is_loop() || self.path_edges.contains(&e) || (edge.u != p && edge.v != p) {
            return Err(PathScoreError::NotNeighborEdge(e));
        }
        let v = edge.other(p);
        if self.on_path.contains(&v) {
            return Ok((WellBehaved, v));
        }
        let adj = self.path_adjacency(v);
        match edge.color {
            EdgeColor::Green => Err(PathScoreError::GreenNotMatching(p)),
            EdgeColor::Red => Ok((if adj == 3 { RedIsland } else { SpecialRed }, v)),
            EdgeColor::Black => {
                let reds = m.incident_with(v, EdgeColor::Red);
                let greens = m.incident_with(v, EdgeColor::Green);
                if reds.is_empty() && greens.is_empty() {
                    return Ok((SpecialBlack, v));
                }
                if adj == 1 {
                    return Ok((BlackDetour, v));
                }
                if let Some(&r) = reds.first() {
                    let far = m.edge(r).other(v);
                    if self.on_path.contains(&far) {
                        return Ok((if adj == 3 { RedIsland } else { SpecialRed }, v));
                    }
                    return Ok((RedIsthmus, v));
                }
                let g = greens[0];
                let partner = m.edge(g).other(v);
                if partner != v && self.path_adjacency(partner) >= 2 {
                    Ok((GreenIsland, g))
                } else {
                    Ok((GreenIsthmus, v))
                }
            }
        }
    }
}

fn view<'a>(m: &'a ColoredMultigraph, nodes: &[VertexId], path: &GreenBlackPath) -> PathView<'a> {
    PathView {
        m,
        on_path: nodes.iter().copied().collect(),
        path_edges: path.on_path_edges(),
    }
}

/// Kind of the neighbor edge `e` at the path vertex `path_vertex`.
pub fn classify_neighbor_edge(
    m: &ColoredMultigraph,
    path: &GreenBlackPath,
    path_vertex: VertexId,
    e: usize,
) -> Result<NeighborEdgeKind, PathScoreError> {
    let v = view(m, &path.nodes, path);
    v.classify(path_vertex, e).map(|(k, _)| k)
}

/// Neighbor edges at the internal positions `internal` of `nodes`.
fn neighbor_edges_in(
    m: &ColoredMultigraph,
    path: &GreenBlackPath,
    nodes: &[VertexId],
    internal: std::ops::Range<usize>,
) -> Result<Vec<NeighborEdge>, PathScoreError> {
    let pv = view(m, nodes, path);
    let mut out = Vec::new();
    for pos in internal {
        let p = nodes[pos];
        let mut seen = BTreeSet::new();
        for &e in m.incident(p) {
            if pv.path_edges.contains(&e) || !seen.insert(e) {
                continue;
            }
            let (kind, structure) = pv.classify(p, e)?;
            out.push(NeighborEdge {
                edge: e,
                position: pos,
                upper: pos % 2 == 1,
                far_end: m.edge(e).other(p),
                kind,
                structure,
            });
        }
    }
    Ok(out)
}

/// All neighbor edges of a path, in path order.
pub fn neighbor_edges(m: &ColoredMultigraph, path: &GreenBlackPath) -> Result<Vec<NeighborEdge>, PathScoreError> {
    let len = path.nodes.len();
    neighbor_edges_in(m, path, &path.nodes, 1..len - 1)
}

/// Share of an edge in the weight surplus or deficit of its structure,
/// with the vertices removed on its account. `None` means the side does
/// not apply.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeShare {
    pub f_upper: Option<Rational12>,
    pub f_lower: Option<Rational12>,
    pub s_upper: Vec<VertexId>,
    pub s_lower: Vec<VertexId>,
}

/// Share of the neighbor edge `ne` among the classified edges `all` of the
/// same path. Special and well-behaved edges carry no share.
pub fn edge_share(m: &ColoredMultigraph, ne: &NeighborEdge, all: &[NeighborEdge]) -> Option<EdgeShare> {
    use NeighborEdgeKind::*;
    let both = |f: Rational12, s: Vec<VertexId>| EdgeShare {
        f_upper: Some(f),
        f_lower: Some(f),
        s_upper: s.clone(),
        s_lower: s,
    };
    match ne.kind {
        RedIsland => {
            let v = ne.structure;
            let red = m.incident_with(v, EdgeColor::Red)[0];
            let mut s = vec![v];
            s.extend(m.edge(red).path_from(m.edge(red).other(v)));
            Some(both(Rational12::frac(2, 3), s))
        }
        GreenIsland => {
            let g = m.edge(ne.structure);
            let mut s = vec![g.u, g.v];
            s.extend(&g.path);
            Some(both(Rational12::frac(1, 4), s))
        }
        GreenIsthmus | RedIsthmus => {
            let u = ne.structure;
            let any_upper = all.iter().any(|o| o.kind == ne.kind && o.structure == u && o.upper);
            if any_upper {
                Some(both(Rational12::frac(1, 2), vec![u]))
            } else {
                let color = if ne.kind == GreenIsthmus {
                    EdgeColor::Green
                } else {
                    EdgeColor::Red
                };
                let c = m.incident_with(u, color)[0];
                let first = m.edge(c).interior(u, 1);
                Some(EdgeShare {
                    f_upper: None,
                    f_lower: Some(Rational12::frac(-3, 2)),
                    s_upper: Vec::new(),
                    s_lower: vec![u, first],
                })
            }
        }
        BlackDetour => Some(EdgeShare {
            f_upper: Some(Rational12::ZERO),
            f_lower: Some(Rational12::int(-1)),
            s_upper: Vec::new(),
            s_lower: Vec::new(),
        }),
        SpecialRed | SpecialBlack | WellBehaved => None,
    }
}

/// Census of a path feeding the score formulas. Primed counts refer to the
/// lower side.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct PathAnnotation {
    pub t1: u8,
    pub t1p: u8,
    pub k: u64,
    pub r_island: u64,
    pub g_island: u64,
    /// Isthmuses meeting the path in two upper edges.
    pub n_isthmus: u64,
    /// Isthmuses meeting the path in two lower edges.
    pub n_isthmus_p: u64,
    /// Isthmuses meeting the path in one upper and one lower edge.
    pub m_isthmus: u64,
    pub b_detour: u64,
    pub b_detour_p: u64,
}

impl PathAnnotation {
    /// The counting constraints: `k - 1` upper and `k - 1` lower edges
    /// leave room for the isthmus and detour edges on each side.
    pub fn is_admissible(&self) -> bool {
        self.k >= 1
            && self.t1 <= 1
            && self.t1p <= 1
            && self.k - 1 >= 2 * self.n_isthmus + self.b_detour
            && self.k - 1 >= 2 * self.n_isthmus_p + self.b_detour_p
    }

    pub fn mirrored(&self) -> PathAnnotation {
        PathAnnotation {
            t1: self.t1p,
            t1p: self.t1,
            n_isthmus: self.n_isthmus_p,
            n_isthmus_p: self.n_isthmus,
            b_detour: self.b_detour_p,
            b_detour_p: self.b_detour,
            ..*self
        }
    }
}

fn r(v: i64) -> Rational12 {
    Rational12::int(v)
}

fn i(v: u64) -> i64 {
    i64::try_from(v).expect("census fits i64")
}

/// Weight of a green island in the score: the displayed formula counts 2
/// per island, the itemized accounting 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GreenIslandWeight {
    Formula,
    Itemized,
}

impl GreenIslandWeight {
    fn coefficient(self) -> i64 {
        match self {
            GreenIslandWeight::Formula => 2,
            GreenIslandWeight::Itemized => 1,
        }
    }
}

fn score_with(a: &PathAnnotation, gw: GreenIslandWeight) -> Rational12 {
    r((1 + i64::from(a.t1)) - i64::from(a.t1p)
        + (i(a.k) - 1)
        + 2 * i(a.r_island)
        + gw.coefficient() * i(a.g_island)
        + (i(a.n_isthmus) + i(a.m_isthmus) - 3 * i(a.n_isthmus_p))
        - i(a.b_detour_p))
}

/// Score of a path: first extremity by the interior-keeping strategy, last
/// by the partner-keeping one, upper vertices taken into the set.
pub fn score_path(a: &PathAnnotation) -> Rational12 {
    score_with(a, GreenIslandWeight::Formula)
}

/// Score of the reversed path.
pub fn score_reverse(a: &PathAnnotation) -> Rational12 {
    score_with(&a.mirrored(), GreenIslandWeight::Formula)
}

/// Both scores with a chosen green-island weight.
pub fn score_pair(a: &PathAnnotation, gw: GreenIslandWeight) -> (Rational12, Rational12) {
    (score_with(a, gw), score_with(&a.mirrored(), gw))
}

/// The special edge ending a truncated path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Terminal {
    SpecialRed,
    SpecialBlack,
}

/// Whether the first special edge sits on an upper vertex `uq'` or on a
/// lower vertex `uq`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TerminalSide {
    Upper,
    Lower,
}

/// Counting constraints for a prefix of `q = a.k` green edges ending at a
/// special edge on the given side.
pub fn truncated_admissible(a: &PathAnnotation, side: TerminalSide) -> bool {
    let q = a.k;
    let lower_room = match side {
        TerminalSide::Upper => q.checked_sub(1),
        TerminalSide::Lower => q.checked_sub(2),
    };
    let Some(lower_room) = lower_room else { return false };
    a.t1 <= 1 && q - 1 >= 2 * a.n_isthmus + a.b_detour && lower_room >= 2 * a.n_isthmus_p + a.b_detour_p
}

/// Scores `(forward, reverse)` of the prefix `Q` cut at the first special
/// edge; `a.k` is the number of green edges of `Q` and `t1p` is ignored.
pub fn score_truncated(a: &PathAnnotation, terminal: Terminal, side: TerminalSide) -> (Rational12, Rational12) {
    let q = i(a.k);
    let t1 = i64::from(a.t1);
    let islands = 2 * i(a.r_island) + 2 * i(a.g_island);
    let upper_census = i(a.n_isthmus) + i(a.m_isthmus) - 3 * i(a.n_isthmus_p) - i(a.b_detour_p);
    let lower_census = i(a.n_isthmus_p) + i(a.m_isthmus) - 3 * i(a.n_isthmus) - i(a.b_detour);
    match side {
        TerminalSide::Upper => {
            let forward = (1 + t1) - 1 + (q - 1) + islands + upper_census;
            let reverse = -t1 + (q - 1) + islands + lower_census;
            let reverse = match terminal {
                Terminal::SpecialRed => reverse,
                Terminal::SpecialBlack => reverse - 1,
            };
            (r(forward), r(reverse))
        }
        TerminalSide::Lower => {
            let forward = -t1 + 1 + (q - 2) + islands + lower_census;
            let reverse = (1 + t1) - 1 + (q - 1) + islands + upper_census;
            (r(forward), r(reverse))
        }
    }
}

/// The prefix census when the path carries a special neighbor edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Truncation {
    pub q: usize,
    pub terminal: Terminal,
    pub side: TerminalSide,
    pub special_edge: usize,
    pub prefix: PathAnnotation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathCensus {
    pub start: ExtremityStructure,
    pub end: ExtremityStructure,
    pub annotation: PathAnnotation,
    pub neighbor_edges: Vec<NeighborEdge>,
    pub truncation: Option<Truncation>,
}

fn tally(edges: &[NeighborEdge], k: usize, t1: u8, t1p: u8) -> PathAnnotation {
    use NeighborEdgeKind::*;
    let mut a = PathAnnotation {
        t1,
        t1p,
        k: k as u64,
        ..Default::default()
    };
    let mut red_islands = BTreeSet::new();
    let mut green_islands = BTreeSet::new();
    let mut isthmus: BTreeMap<(NeighborEdgeKind, usize), (u64, u64)> = BTreeMap::new();
    for ne in edges {
        match ne.kind {
            RedIsland => {
                red_islands.insert(ne.structure);
            }
            GreenIsland => {
                green_islands.insert(ne.structure);
            }
            GreenIsthmus | RedIsthmus => {
                let entry = isthmus.entry((ne.kind, ne.structure)).or_default();
                if ne.upper {
                    entry.0 += 1;
                } else {
                    entry.1 += 1;
                }
            }
            BlackDetour => {
                if ne.upper {
                    a.b_detour += 1;
                } else {
                    a.b_detour_p += 1;
                }
            }
            SpecialRed | SpecialBlack | WellBehaved => {}
        }
    }
    a.r_island = red_islands.len() as u64;
    a.g_island = green_islands.len() as u64;
    for (up, low) in isthmus.into_values() {
        match (up > 0, low > 0) {
            (true, true) => a.m_isthmus += 1,
            (true, false) => a.n_isthmus += 1,
            (false, _) => a.n_isthmus_p += 1,
        }
    }
    a
}

/// Derives the census of a path from the multigraph.
pub fn annotate(m: &ColoredMultigraph, path: &GreenBlackPath) -> Result<PathCensus, PathScoreError> {
    let start = classify_extremity(m, path, PathEnd::Start)?;
    let end = classify_extremity(m, path, PathEnd::End)?;
    let t1 = u8::from(start.kind == ExtremityType::T1);
    let t1p = u8::from(end.kind == ExtremityType::T1);
    let edges = neighbor_edges(m, path)?;
    let annotation = tally(&edges, path.k(), t1, t1p);
    let truncation = match edges.iter().find(|ne| ne.kind.is_special()) {
        None => None,
        Some(first) => {
            let idx = first.position;
            let (q, side, internal) = if idx % 2 == 1 {
                let q = idx.div_ceil(2);
                (q, TerminalSide::Upper, 1..idx)
            } else {
                let q = idx / 2 + 1;
                (q, TerminalSide::Lower, 1..idx)
            };
            let prefix_nodes = &path.nodes[..=idx];
            let prefix_edges = neighbor_edges_in(m, path, prefix_nodes, internal)?;
            let terminal = if first.kind == NeighborEdgeKind::SpecialRed {
                Terminal::SpecialRed
            } else {
                Terminal::SpecialBlack
            };
            Some(Truncation {
                q,
                terminal,
                side,
                special_edge: first.edge,
                prefix: tally(&prefix_edges, q, t1, 0),
            })
        }
    };
    Ok(PathCensus {
        start,
        end,
        annotation,
        neighbor_edges: edges,
        truncation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::MarkedGraph;

    fn ann(t1: u8, t1p: u8, k: u64) -> PathAnnotation {
        PathAnnotation {
            t1,
            t1p,
            k,
            ..Default::default()
        }
    }

    #[test]
    fn table_of_strategy_deltas() {
        use ExtremityType::*;
        use Strategy::*;
        let got: Vec<i64> = [T1, T2, T3]
            .iter()
            .flat_map(|&t| [KeepFirstInterior, KeepFirstPartner].map(|s| strategy_delta(t, s).0 / 12))
            .collect();
        assert_eq!(got, vec![2, -1, 1, 0, 1, 0]);
    }

    #[test]
    fn score_examples() {
        assert_eq!(score_path(&ann(0, 0, 2)), Rational12::int(2));
        assert_eq!(score_path(&ann(1, 1, 1)), Rational12::int(1));
        assert_eq!(score_reverse(&ann(1, 0, 3)), Rational12::int(2));
        let sym = PathAnnotation {
            t1: 1,
            t1p: 1,
            k: 7,
            n_isthmus: 1,
            n_isthmus_p: 1,
            b_detour: 2,
            b_detour_p: 2,
            ..Default::default()
        };
        assert_eq!(score_path(&sym), score_reverse(&sym));
    }

    #[test]
    fn green_island_readings_differ_by_island_count() {
        let a = PathAnnotation {
            g_island: 3,
            ..ann(0, 0, 4)
        };
        let (f, _) = score_pair(&a, GreenIslandWeight::Formula);
        let (it, _) = score_pair(&a, GreenIslandWeight::Itemized);
        assert_eq!(f - it, Rational12::int(3));
        assert_eq!(f, score_path(&a));
    }

    #[test]
    fn truncated_examples() {
        let a = ann(0, 0, 2);
        assert_eq!(
            score_truncated(&a, Terminal::SpecialRed, TerminalSide::Upper).0,
            Rational12::int(1)
        );
        let (f1, r1) = score_truncated(&a, Terminal::SpecialRed, TerminalSide::Upper);
        let (f2, r2) = score_truncated(&a, Terminal::SpecialBlack, TerminalSide::Upper);
        assert_eq!(f1, f2);
        assert_eq!(r1 - r2, Rational12::ONE);
        assert_eq!(
            score_truncated(&a, Terminal::SpecialRed, TerminalSide::Lower),
            score_truncated(&a, Terminal::SpecialBlack, TerminalSide::Lower)
        );
    }

    #[test]
    fn shares_add_up_to_structure_totals() {
        assert_eq!(Rational12::frac(2, 3) * 3, Rational12::int(2));
        assert_eq!(Rational12::frac(1, 4) * 4, Rational12::int(1));
        assert_eq!(Rational12::frac(-3, 2) * 2, Rational12::int(-3));
    }

    /// A chain of `k` green edges joined by blacks, closed off by caps.
    fn ladder(k: usize, closed: bool) -> ColoredMultigraph {
        let mut g = MarkedGraph::new(0);
        let mut nodes = Vec::new();
        for _ in 0..2 * k {
            nodes.push(g.add_vertex(false));
        }
        for i in 0..k {
            let mid = g.add_vertex(false);
            g.add_edge(nodes[2 * i], mid).unwrap();
            g.add_edge(mid, nodes[2 * i + 1]).unwrap();
            if i + 1 < k {
                g.add_edge(nodes[2 * i + 1], nodes[2 * i + 2]).unwrap();
            }
        }
        if closed {
            g.add_edge(nodes[2 * k - 1], nodes[0]).unwrap();
        }
        for &x in &nodes {
            while g.degree(x) < 3 {
                gadgets::attach_cap(&mut g, x);
            }
        }
        ColoredMultigraph::build(&g).unwrap()
    }

    #[test]
    fn decomposition_examples() {
        let one = find_max_paths(&ladder(1, false)).unwrap();
        assert_eq!((one.paths.len(), one.cycles.len()), (1, 0));
        assert_eq!(one.paths[0].k(), 1);
        let two = find_max_paths(&ladder(2, false)).unwrap();
        assert_eq!(two.paths[0].k(), 2);
        let cyc = find_max_paths(&ladder(3, true)).unwrap();
        assert_eq!((cyc.paths.len(), cyc.cycles.len()), (0, 1));
        assert_eq!(cyc.cycles[0].blacks.len(), 3);
    }

    #[test]
    fn caps_give_special_black_edges() {
        let m = ladder(3, false);
        let p = &find_max_paths(&m).unwrap().paths[0];
        let edges = neighbor_edges(&m, p).unwrap();
        assert_eq!(edges.len(), 4);
        assert!(edges.iter().all(|e| e.kind == NeighborEdgeKind::SpecialBlack));
    }

    use gadgets::{cap_all, join, path_gadget};
    use ExtremityType::*;

    /// Builds a path of `k` greens, lets `decorate` use the free slots of
    /// the internal vertices, caps the rest and returns the census.
    fn census(
        k: usize,
        start: ExtremityType,
        end: ExtremityType,
        decorate: impl FnOnce(&mut MarkedGraph, &[VertexId]),
    ) -> (ColoredMultigraph, PathCensus) {
        let (mut g, nodes) = path_gadget(k, start, end);
        decorate(&mut g, &nodes);
        cap_all(&mut g, &nodes);
        let m = ColoredMultigraph::build(&g).unwrap();
        let d = find_max_paths(&m).unwrap();
        let p = d
            .paths
            .iter()
            .find(|p| p.nodes[0] == 0)
            .expect("path from vertex 0")
            .clone();
        assert_eq!(p.nodes, nodes);
        let c = annotate(&m, &p).unwrap();
        (m, c)
    }

    fn kinds(c: &PathCensus) -> Vec<NeighborEdgeKind> {
        c.neighbor_edges.iter().map(|e| e.kind).collect()
    }

    #[test]
    fn extremity_types_read_from_both_ends() {
        for (a, b) in [(T1, T2), (T2, T3), (T3, T1)] {
            let (_, c) = census(1, a, b, |_, _| {});
            assert_eq!((c.start.kind, c.end.kind), (a, b));
            assert_eq!(c.annotation.t1, u8::from(a == T1));
            assert_eq!(c.annotation.t1p, u8::from(b == T1));
        }
    }

    #[test]
    fn red_island_edges() {
        let (m, c) = census(3, T2, T2, |g, n| {
            let v = g.add_vertex(false);
            join(g, n[1], v, 2);
            join(g, v, n[2], 0);
            join(g, v, n[3], 0);
        });
        assert_eq!(&kinds(&c)[..3], &[NeighborEdgeKind::RedIsland; 3]);
        assert_eq!(c.annotation.r_island, 1);
        let share = edge_share(&m, &c.neighbor_edges[0], &c.neighbor_edges).unwrap();
        assert_eq!(share.f_upper, Some(Rational12::frac(2, 3)));
        assert_eq!(share.s_upper.len(), 3);
        // the last internal vertex meets a cap, so the path is truncated there
        let t = c.truncation.unwrap();
        assert_eq!(
            (t.side, t.terminal, t.q),
            (TerminalSide::Lower, Terminal::SpecialBlack, 3)
        );
        assert_eq!(t.prefix.r_island, 1);
    }

    #[test]
    fn green_island_and_isthmus() {
        let (m, c) = census(3, T1, T3, |g, n| {
            let a = g.add_vertex(false);
            let b = g.add_vertex(false);
            join(g, a, b, 1);
            for (x, y) in [(a, n[1]), (a, n[2]), (b, n[3]), (b, n[4])] {
                join(g, x, y, 0);
            }
        });
        assert_eq!(kinds(&c), vec![NeighborEdgeKind::GreenIsland; 4]);
        assert_eq!(c.annotation.g_island, 1);
        assert!(c.truncation.is_none());
        let share = edge_share(&m, &c.neighbor_edges[2], &c.neighbor_edges).unwrap();
        assert_eq!(share.f_lower, Some(Rational12::frac(1, 4)));

        let (m, c) = census(3, T2, T2, |g, n| {
            let a = g.add_vertex(false);
            let b = g.add_vertex(false);
            join(g, a, b, 1);
            join(g, a, n[2], 0);
            join(g, a, n[4], 0);
            cap_all(g, &[b]);
        });
        let isthmus: Vec<_> = c
            .neighbor_edges
            .iter()
            .filter(|e| e.kind == NeighborEdgeKind::GreenIsthmus)
            .collect();
        assert_eq!(isthmus.len(), 2);
        assert!(isthmus.iter().all(|e| !e.upper));
        assert_eq!(c.annotation.n_isthmus_p, 1);
        let share = edge_share(&m, isthmus[0], &c.neighbor_edges).unwrap();
        assert_eq!(share.f_lower, Some(Rational12::frac(-3, 2)));
        assert_eq!(share.f_upper, None);
        assert_eq!(share.s_lower.len(), 2);
    }

    #[test]
    fn red_isthmus_and_detour() {
        let (m, c) = census(3, T3, T3, |g, n| {
            let a = g.add_vertex(false);
            let b = g.add_vertex(false);
            join(g, a, b, 2);
            join(g, a, n[1], 0);
            join(g, a, n[2], 0);
            cap_all(g, &[b]);
            let d = g.add_vertex(false);
            let e = g.add_vertex(false);
            join(g, n[3], d, 0);
            join(g, d, e, 1);
            join(g, n[4], e, 0);
            cap_all(g, &[d, e]);
        });
        let ks = kinds(&c);
        assert_eq!(&ks[..2], &[NeighborEdgeKind::RedIsthmus; 2]);
        assert_eq!(c.annotation.m_isthmus, 1);
        let share = edge_share(&m, &c.neighbor_edges[1], &c.neighbor_edges).unwrap();
        assert_eq!(share.f_upper, Some(Rational12::frac(1, 2)));
        assert_eq!(share.f_lower, Some(Rational12::frac(1, 2)));
        // d and e each meet one path vertex and share a green edge
        assert_eq!(&ks[2..], &[NeighborEdgeKind::BlackDetour; 2]);
        assert_eq!((c.annotation.b_detour, c.annotation.b_detour_p), (1, 1));
        assert!(c.annotation.is_admissible());
        let sum = score_path(&c.annotation) + score_reverse(&c.annotation);
        assert!(sum >= Rational12::int(2));
    }

    #[test]
    fn special_red_truncates_on_the_upper_side() {
        let (_, c) = census(3, T2, T1, |g, n| {
            let a = g.add_vertex(false);
            join(g, n[3], a, 2);
            cap_all(g, &[a]);
            for &x in &n[1..3] {
                let d = g.add_vertex(false);
                let e = g.add_vertex(false);
                join(g, x, d, 0);
                join(g, d, e, 2);
                cap_all(g, &[d, e]);
            }
        });
        assert_eq!(kinds(&c)[2], NeighborEdgeKind::SpecialRed);
        let t = c.truncation.unwrap();
        assert_eq!(
            (t.side, t.terminal, t.q),
            (TerminalSide::Upper, Terminal::SpecialRed, 2)
        );
        assert_eq!((t.prefix.b_detour, t.prefix.b_detour_p), (1, 1));
    }

    #[test]
    fn well_behaved_chords() {
        let (_, c) = census(3, T2, T3, |g, n| {
            join(g, n[1], n[4], 0);
            join(g, n[2], n[3], 2);
        });
        assert_eq!(kinds(&c), vec![NeighborEdgeKind::WellBehaved; 4]);
        assert_eq!(
            c.annotation,
            PathAnnotation {
                k: 3,
                ..Default::default()
            }
        );
    }
}
