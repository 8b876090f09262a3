//! Rules on low degrees, marks and long 2-paths.

use super::pattern::{all_distinct, others, walk};
use super::{Candidate, Finder};
use crate::graph::VertexId;

pub(crate) fn marked_isolated(f: &mut Finder<'_>) {
    let g = f.g;
    for v in g.vertices() {
        if g.is_marked(v) && g.degree(v) == 0 && f.offer(Candidate::new(&[("v", v)]).remove([v])) {
            return;
        }
    }
}

pub(crate) fn unmark_deg3(f: &mut Finder<'_>) {
    let g = f.g;
    for v in g.vertices() {
        if g.is_marked(v) && g.degree(v) == 3 && f.offer(Candidate::new(&[("v", v)]).unmark([v])) {
            return;
        }
    }
}

pub(crate) fn unmarked_isolated(f: &mut Finder<'_>) {
    let g = f.g;
    for v in g.vertices() {
        if !g.is_marked(v) && g.degree(v) == 0 && f.offer(Candidate::new(&[("v", v)]).remove([v]).dominators([v])) {
            return;
        }
    }
}

pub(crate) fn unmarked_leaf(f: &mut Finder<'_>) {
    let g = f.g;
    for u in g.vertices() {
        if g.is_marked(u) || g.degree(u) != 1 {
            continue;
        }
        let v = g.neighbors(u).next().expect("degree 1");
        let c = Candidate::new(&[("u", u), ("v", v)])
            .remove([u, v])
            .mark(others(g, v, &[u]))
            .dominators([v]);
        if f.offer(c) {
            return;
        }
    }
}

pub(crate) fn marked_marked_edge(f: &mut Finder<'_>) {
    let g = f.g;
    for (u, v) in g.edges() {
        if g.is_marked(u) && g.is_marked(v) && f.offer(Candidate::new(&[("u", u), ("v", v)]).delete_edge(u, v)) {
            return;
        }
    }
}

pub(crate) fn marked_leaf(f: &mut Finder<'_>) {
    let g = f.g;
    for u in g.vertices() {
        if !g.is_marked(u) || g.degree(u) != 1 {
            continue;
        }
        let v = g.neighbors(u).next().expect("degree 1");
        if f.offer(Candidate::new(&[("u", u), ("v", v)]).remove([u])) {
            return;
        }
    }
}

pub(crate) fn marked_beside_deg3(f: &mut Finder<'_>) {
    let g = f.g;
    for u in g.vertices() {
        if !g.is_marked(u) || g.degree(u) != 2 {
            continue;
        }
        for v in g.neighbors(u) {
            if g.degree(v) != 3 {
                continue;
            }
            let w = others(g, u, &[v])[0];
            if f.offer(Candidate::new(&[("u", u), ("v", v), ("w", w)]).remove([u])) {
                return;
            }
        }
    }
}

/// Paths `u1 u2 ...` of degree-2 vertices leaving the marked degree-2
/// vertex `u1`, one per direction: `[u0, u1, ..., u_len]`.
fn from_marked(f: &Finder<'_>, u1: VertexId, len: usize) -> Vec<Vec<VertexId>> {
    let g = f.g;
    if !g.is_marked(u1) || g.degree(u1) != 2 {
        return Vec::new();
    }
    let nb = g.neighbor_vec(u1);
    let mut out = Vec::new();
    for (u0, u2) in [(nb[0], nb[1]), (nb[1], nb[0])] {
        if let Some(rest) = walk(g, u1, u2, len - 2) {
            let mut p = vec![u0, u1];
            p.extend(rest);
            if all_distinct(&p) {
                out.push(p);
            }
        }
    }
    out
}

pub(crate) fn two_path_from_marked(f: &mut Finder<'_>) {
    let g = f.g;
    for u1 in g.vertices() {
        for p in from_marked(f, u1, 4) {
            let inner = &p[2..5];
            if inner.iter().any(|&x| g.is_marked(x) || g.degree(x) != 2) {
                continue;
            }
            let c = Candidate::new(&[("u1", p[1]), ("u2", p[2]), ("u3", p[3]), ("u4", p[4])])
                .remove(p[1..5].iter().copied())
                .dominators([p[3]]);
            if f.offer(c) {
                return;
            }
        }
    }
}

/// A 2-path `u1 .. u_order` (listed with its outer neighbors `u0` and
/// `u_{order+1}`) whose vertices at positions `a` and `b` are marked and
/// all other vertices unmarked.
fn marked_pair_paths(f: &Finder<'_>, order: usize, a: usize, b: usize) -> Vec<Vec<VertexId>> {
    let g = f.g;
    let mut out = Vec::new();
    for v in g.vertices() {
        if !g.is_marked(v) || g.degree(v) != 2 {
            continue;
        }
        for start in g.neighbors(v) {
            // start plays u_{a-1}; walk back to u0 first
            let Some(back) = walk(g, v, start, a - 1) else { continue };
            let u0 = *back.last().expect("nonempty");
            let u1 = if a == 1 { v } else { back[a - 2] };
            let Some(seq) = walk(g, u0, u1, order) else { continue };
            let mut p = vec![u0];
            p.extend(seq);
            if p.len() != order + 2 || !all_distinct(&p) {
                continue;
            }
            let ok = (1..=order).all(|i| g.degree(p[i]) == 2 && (g.is_marked(p[i]) == (i == a || i == b)));
            if ok {
                out.push(p);
            }
        }
    }
    out
}

pub(crate) fn marked_close_d2_near(f: &mut Finder<'_>) {
    let g = f.g;
    for p in marked_pair_paths(f, 5, 2, 4) {
        if !(g.is_marked(p[0]) || g.degree(p[0]) == 3) {
            continue;
        }
        let c = Candidate::new(&[("u0", p[0]), ("u2", p[2]), ("u4", p[4])])
            .remove([p[1], p[2], p[3]])
            .dominators([p[2]]);
        if f.offer(c) {
            return;
        }
    }
}

pub(crate) fn marked_close_d2_far(f: &mut Finder<'_>) {
    let g = f.g;
    for p in marked_pair_paths(f, 5, 2, 4) {
        let (u0, u6) = (p[0], p[6]);
        let plain = |x: VertexId| !g.is_marked(x) && g.degree(x) == 2;
        if !plain(u0) || !plain(u6) || u0 == u6 {
            continue;
        }
        let u7 = others(g, u6, &[p[5]])[0];
        let c = Candidate::new(&[("u2", p[2]), ("u4", p[4]), ("u6", u6), ("u7", u7)])
            .remove(p[1..=6].iter().copied())
            .mark([u7])
            .dominators([p[2], u6]);
        if f.offer(c) {
            return;
        }
    }
}

pub(crate) fn marked_close_d3_path(f: &mut Finder<'_>) {
    let g = f.g;
    for p in marked_pair_paths(f, 6, 2, 5) {
        let u7 = p[7];
        if g.degree(u7) != 2 || g.is_marked(u7) {
            continue;
        }
        let u8 = others(g, u7, &[p[6]])[0];
        if p.contains(&u8) {
            continue;
        }
        let c = Candidate::new(&[("u2", p[2]), ("u5", p[5]), ("u7", u7), ("u8", u8)])
            .remove(p[2..=7].iter().copied())
            .mark([u8])
            .dominators([p[3], u7]);
        if f.offer(c) {
            return;
        }
    }
}

pub(crate) fn marked_close_d3_cubic(f: &mut Finder<'_>) {
    let g = f.g;
    for p in marked_pair_paths(f, 6, 2, 5) {
        if g.degree(p[0]) != 3 || g.degree(p[7]) != 3 {
            continue;
        }
        let c = Candidate::new(&[("u0", p[0]), ("u2", p[2]), ("u5", p[5]), ("u7", p[7])])
            .remove(p[1..=6].iter().copied())
            .dominators([p[2], p[5]]);
        if f.offer(c) {
            return;
        }
    }
}

pub(crate) fn cycle_component(f: &mut Finder<'_>) {
    let g = f.g;
    for comp in g.components() {
        let n = comp.len();
        if n < 3 || comp.iter().any(|&v| g.degree(v) != 2 || g.is_marked(v)) {
            continue;
        }
        let start = *comp.iter().min().expect("nonempty component");
        let nb = g.neighbor_vec(start);
        let Some(order) = walk(g, start, nb[0], n - 1) else {
            continue;
        };
        // order lists the cycle from nb[0]; rotate so it starts at `start`
        let mut c = vec![start];
        c.extend(order.into_iter().take(n - 1));
        let mut dominators: Vec<VertexId> = (0..n / 3).map(|i| c[3 * i + 1]).collect();
        if n % 3 != 0 {
            dominators.push(c[n - 1]);
        }
        let cand = Candidate::new(&[("c0", start)])
            .remove(c.iter().copied())
            .dominators(dominators)
            .size(n as u32);
        if f.offer(cand) {
            return;
        }
    }
}

pub(crate) fn two_path_6(f: &mut Finder<'_>) {
    let g = f.g;
    for u0 in g.vertices() {
        if g.degree(u0) != 3 {
            continue;
        }
        for u1 in g.neighbors(u0) {
            let Some(p) = walk(g, u0, u1, 6) else { continue };
            let path = &p[..6];
            let u7 = p[6];
            if path.iter().any(|&x| g.degree(x) != 2) || !all_distinct(&[&[u0][..], &p[..]].concat()) {
                continue;
            }
            let c = Candidate::new(&[("u0", u0), ("u1", u1), ("u7", u7)])
                .remove(path.iter().copied())
                .dominators([path[1], path[4]]);
            if f.offer(c) {
                return;
            }
        }
    }
}

pub(crate) fn two_path_3(f: &mut Finder<'_>) {
    let g = f.g;
    for u0 in g.vertices() {
        if g.degree(u0) != 3 {
            continue;
        }
        for u1 in g.neighbors(u0) {
            let a = super::pattern::arm(g, u0, u1);
            if a.interior.len() != 3 || g.degree(a.end) != 3 || a.is_loop() {
                continue;
            }
            let c = Candidate::new(&[
                ("u0", u0),
                ("u1", a.at(1)),
                ("u2", a.at(2)),
                ("u3", a.at(3)),
                ("u4", a.end),
            ])
            .remove(a.interior.iter().copied())
            .dominators([a.at(2)]);
            if f.offer(c) {
                return;
            }
        }
    }
}
