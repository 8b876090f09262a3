//! Rules on short red edges and on shortest cycles of cubic vertices.

use super::pattern::{all_distinct, arms, others, shortest_cycles, Arm};
use super::{Candidate, Finder};
use crate::graph::{girth, MarkedGraph, VertexId};
use crate::multigraph::EdgeColor::Red;

fn short_red_arms(g: &MarkedGraph, v: VertexId) -> Vec<Arm> {
    arms(g, v)
        .unwrap_or_default()
        .into_iter()
        .filter(|a| a.is_short(Red) && !a.is_loop())
        .collect()
}

pub(crate) fn red_adjacent(f: &mut Finder<'_>) {
    let g = f.g;
    for (v, w) in g.edges() {
        for x in short_red_arms(g, v) {
            for y in short_red_arms(g, w) {
                if x.end == w || y.end == v || !all_distinct(&[v, w, x.end, y.end]) {
                    continue;
                }
                let c = Candidate::new(&[("v", v), ("w", w), ("y", x.end), ("z", y.end)])
                    .remove([v, w])
                    .remove(x.interior.iter().chain(&y.interior).copied())
                    .dominators([x.at(1), y.at(1)]);
                if f.offer(c) {
                    return;
                }
            }
        }
    }
}

/// Short red edges `uv` with `u < v`: the red arm and the two other
/// neighbors of each end.
fn red_edges(g: &MarkedGraph) -> Vec<(Arm, Vec<VertexId>, Vec<VertexId>)> {
    let mut out = Vec::new();
    for u in g.vertices() {
        for x in short_red_arms(g, u) {
            let v = x.end;
            if v < u || g.degree(v) != 3 {
                continue;
            }
            let us = others(g, u, &[x.at(1)]);
            let vs = others(g, v, &[x.at(2)]);
            if all_distinct(&[u, v, us[0], us[1], vs[0], vs[1]]) {
                out.push((x, us, vs));
            }
        }
    }
    out
}

pub(crate) fn red_edge_adjacent(f: &mut Finder<'_>) {
    let g = f.g;
    for (x, us, vs) in red_edges(g) {
        let (u, v) = (x.start, x.end);
        for i in 0..2 {
            for j in 0..2 {
                if !g.has_edge(us[i], vs[j]) {
                    continue;
                }
                let c = Candidate::new(&[("u", u), ("v", v), ("ui", us[i]), ("vj", vs[j])])
                    .remove([u, v, us[i], vs[j]])
                    .remove(x.interior.iter().copied())
                    .mark([us[1 - i], vs[1 - j]])
                    .dominators([u, v]);
                if f.offer(c) {
                    return;
                }
            }
        }
    }
}

pub(crate) fn red_edge_independent(f: &mut Finder<'_>) {
    let g = f.g;
    for (x, us, vs) in red_edges(g) {
        let (u, v) = (x.start, x.end);
        let boundary = [us[0], us[1], vs[0], vs[1]];
        let independent = (0..4).all(|i| (i + 1..4).all(|j| !g.has_edge(boundary[i], boundary[j])));
        if !independent {
            continue;
        }
        for j in 0..2 {
            let c = Candidate::new(&[("u", u), ("v", v), ("v1", vs[j]), ("v2", vs[1 - j])])
                .remove([u, v, us[0], us[1], vs[j]])
                .remove(x.interior.iter().copied())
                .mark([vs[1 - j]])
                .dominators([u, v]);
            if f.offer(c) {
                return;
            }
        }
    }
}

/// A shortest cycle `c` of cubic vertices with the off-cycle neighbor of
/// each cycle vertex, in both orientations and every rotation.
struct Rooted {
    c: Vec<VertexId>,
    pendant: Vec<VertexId>,
}

impl Rooted {
    fn candidate(&self) -> Candidate {
        Candidate::new(&[("v1", self.c[0]), ("v2", self.c[1])])
            .remove(self.c.iter().copied())
            .size(self.c.len() as u32)
    }
}

fn rooted_cycles(g: &MarkedGraph, len: usize) -> Vec<Rooted> {
    let mut out = Vec::new();
    for cyc in shortest_cycles(g, len) {
        if cyc.iter().any(|&v| g.degree(v) != 3) {
            continue;
        }
        let mut rev = cyc.clone();
        rev.reverse();
        for orient in [cyc, rev] {
            let pendant: Vec<VertexId> = (0..len)
                .map(|i| others(g, orient[i], &[orient[(i + len - 1) % len], orient[(i + 1) % len]])[0])
                .collect();
            for r in 0..len {
                let rot = |v: &[VertexId]| (0..len).map(|i| v[(i + r) % len]).collect::<Vec<_>>();
                out.push(Rooted {
                    c: rot(&orient),
                    pendant: rot(&pendant),
                });
            }
        }
    }
    out
}

fn six_cycle(f: &mut Finder<'_>, chord: bool) {
    let g = f.g;
    for r in rooted_cycles(g, 6) {
        let u = &r.pendant;
        let independent = (0..6).all(|i| (i + 1..6).all(|j| !g.has_edge(u[i], u[j])));
        let ok = if chord { g.has_edge(u[0], u[3]) } else { independent };
        if !ok {
            continue;
        }
        let c = r.candidate().remove([u[0], u[3]]).dominators([r.c[0], r.c[3]]);
        if f.offer(c) {
            return;
        }
    }
}

pub(crate) fn six_cycle_independent(f: &mut Finder<'_>) {
    six_cycle(f, false);
}

pub(crate) fn six_cycle_chord(f: &mut Finder<'_>) {
    six_cycle(f, true);
}

/// The girth of `g` when it is `3k + rem` for some `k >= 3`.
fn girth_mod(g: &MarkedGraph, rem: usize) -> Option<usize> {
    girth(g).finite().filter(|&l| l >= 9 && l % 3 == rem)
}

pub(crate) fn girth_0_mod_3(f: &mut Finder<'_>) {
    let g = f.g;
    let Some(len) = girth_mod(g, 0) else { return };
    for r in rooted_cycles(g, len) {
        let picks: Vec<usize> = (0..len / 3).map(|i| 3 * i + 1).collect();
        let c = r
            .candidate()
            .remove(picks.iter().map(|&i| r.pendant[i]))
            .dominators(picks.iter().map(|&i| r.c[i]))
            .size((len / 3) as u32);
        if f.offer(c) {
            return;
        }
    }
}

pub(crate) fn girth_2_mod_3(f: &mut Finder<'_>) {
    let g = f.g;
    let Some(len) = girth_mod(g, 2) else { return };
    let k = len / 3;
    for r in rooted_cycles(g, len) {
        let picks: Vec<usize> = (1..=k).map(|i| 3 * i).collect();
        let (u1, u2) = (r.pendant[0], r.pendant[1]);
        let c = r
            .candidate()
            .remove(picks.iter().map(|&i| r.pendant[i]))
            .remove(g.neighbors(u1).chain(g.neighbors(u2)))
            .remove([u1, u2])
            .dominators([u1, u2])
            .dominators(picks.iter().map(|&i| r.c[i]))
            .size(k as u32);
        if f.offer(c) {
            return;
        }
    }
}

pub(crate) fn girth_1_mod_3(f: &mut Finder<'_>) {
    let g = f.g;
    let Some(len) = girth_mod(g, 1) else { return };
    let k = len / 3;
    for r in rooted_cycles(g, len) {
        let picks: Vec<usize> = (1..=k).map(|i| 3 * i - 1).collect();
        let u1 = r.pendant[0];
        let c = r
            .candidate()
            .remove(picks.iter().map(|&i| r.pendant[i]))
            .remove(g.neighbors(u1))
            .remove([u1])
            .dominators([u1])
            .dominators(picks.iter().map(|&i| r.c[i]))
            .size(k as u32);
        if f.offer(c) {
            return;
        }
    }
}

/// Neighbors `(w_a, w_b)` of `a` and `b` (off the cycle) joined by an edge.
fn linked(g: &MarkedGraph, a: VertexId, va: VertexId, b: VertexId, vb: VertexId) -> Vec<(VertexId, VertexId)> {
    let mut out = Vec::new();
    for wa in others(g, a, &[va]) {
        for wb in others(g, b, &[vb]) {
            if g.has_edge(wa, wb) {
                out.push((wa, wb));
            }
        }
    }
    out
}

pub(crate) fn girth_10_final(f: &mut Finder<'_>) {
    let g = f.g;
    for r in rooted_cycles(g, 10) {
        let (v, u) = (&r.c, &r.pendant);
        for (w1, w6) in linked(g, u[0], v[0], u[5], v[5]) {
            for (w2, w7) in linked(g, u[1], v[1], u[6], v[6]) {
                let x = |i: usize, w: VertexId| others(g, u[i], &[v[i], w]);
                let (x1, x6, x2, x7) = (x(0, w1), x(5, w6), x(1, w2), x(6, w7));
                if [&x1, &x6, &x2, &x7].iter().any(|s| s.len() != 1) {
                    continue;
                }
                let c = r
                    .candidate()
                    .remove([u[0], w1, w6, u[5], u[1], w2, w7, u[6], u[3], u[8]])
                    .remove([x1[0], x2[0], x6[0], x7[0]])
                    .dominators([u[0], u[1], u[5], u[6], v[3], v[8]])
                    .size(3);
                if f.offer(c) {
                    return;
                }
            }
        }
    }
}
