//! Rules phrased on the colored multigraph of degree-3 vertices.
//!
//! Detectors read colored edges directly from `G` through [`Arm`]s, so they
//! also run on graphs that still have leaves or isolated vertices.

use super::pattern::{all_distinct, arms, is_black_star, others, third_arm, Arm};
use super::{Candidate, Finder};
use crate::graph::{MarkedGraph, VertexId};
use crate::multigraph::EdgeColor::{self, Black, Green, Red};

/// Degree-3 vertices with their arms, in vertex order.
fn nodes(g: &MarkedGraph) -> impl Iterator<Item = (VertexId, Vec<Arm>)> + '_ {
    g.vertices().filter_map(move |u| arms(g, u).map(|a| (u, a)))
}

/// Pairs of distinct arms `(a, b)` of one vertex, `a` before `b`.
fn arm_pairs(a: &[Arm]) -> impl Iterator<Item = (&Arm, &Arm)> {
    (0..a.len()).flat_map(move |i| (0..a.len()).filter(move |&j| j != i).map(move |j| (&a[i], &a[j])))
}

fn long_count(arms: &[&Arm]) -> u32 {
    arms.iter().filter(|a| a.long).count() as u32
}

fn long_dominators(arms: &[&Arm]) -> Vec<VertexId> {
    arms.iter().filter_map(|a| a.long_dominator()).collect()
}

/// The arm of `v` that walks back along `a` (which ends at `v`).
fn reverse(g: &MarkedGraph, a: &Arm) -> Arm {
    let last = a.interior.last().copied().unwrap_or(a.start);
    super::pattern::arm(g, a.end, last)
}

/// The arms at the far end of `a`, if it is a degree-3 vertex.
fn far(g: &MarkedGraph, a: &Arm) -> Option<Vec<Arm>> {
    arms(g, a.end)
}

fn colored(a: &Arm, c: EdgeColor) -> bool {
    a.is(c) && !a.is_loop()
}

pub(crate) fn loop_red(f: &mut Finder<'_>) {
    let g = f.g;
    for (u, a) in nodes(g) {
        for x in &a {
            if !(x.is_loop() && x.is(Red) && x.long) {
                continue;
            }
            let v = others(g, u, &[x.at(1), x.at(5)]);
            let Some(&v) = v.first() else { continue };
            let c = Candidate::new(&[("u", u), ("x1", x.at(1)), ("v", v)])
                .remove([u])
                .remove(x.interior.iter().copied())
                .mark([v])
                .dominators([u, x.at(3)]);
            if f.offer(c) {
                return;
            }
        }
    }
}

pub(crate) fn black_green(f: &mut Finder<'_>) {
    let g = f.g;
    for (u, a) in nodes(g) {
        for (p, b) in arm_pairs(&a) {
            if !(colored(p, Green) && p.long && b.is(Black) && b.end == p.end) {
                continue;
            }
            let v = p.end;
            let Some(vp) = others(g, v, &[u, p.at(4)]).first().copied() else {
                continue;
            };
            let c = Candidate::new(&[("u", u), ("v", v), ("x1", p.at(1)), ("v'", vp)])
                .remove([u, v])
                .remove(p.interior.iter().copied())
                .mark([vp])
                .dominators([v, p.at(2)]);
            if f.offer(c) {
                return;
            }
        }
    }
}

pub(crate) fn green_green_parallel(f: &mut Finder<'_>) {
    let g = f.g;
    for (u, a) in nodes(g) {
        for (p, q) in arm_pairs(&a) {
            if !(colored(p, Green) && colored(q, Green) && p.long && q.long && p.end == q.end) || p.first() > q.first()
            {
                continue;
            }
            let Some(x) = third_arm(&a, p.first(), q.first()) else {
                continue;
            };
            let c = Candidate::new(&[("u", u), ("v", p.end), ("x1", p.at(1)), ("y1", q.at(1))])
                .remove([u])
                .remove(p.interior.iter().chain(&q.interior).copied())
                .mark([x.first()])
                .dominators([u, p.at(3), q.at(3)]);
            if f.offer(c) {
                return;
            }
        }
    }
}

/// Two parallel colored edges between `u` and `v`, colors `(cp, cq)`.
fn parallel_pair(f: &mut Finder<'_>, cp: EdgeColor, cq: EdgeColor) {
    let g = f.g;
    for (u, a) in nodes(g) {
        for (p, q) in arm_pairs(&a) {
            if !(colored(p, cp) && colored(q, cq) && p.end == q.end) || (cp == cq && p.first() > q.first()) {
                continue;
            }
            let v = p.end;
            let Some(ux) = third_arm(&a, p.first(), q.first()) else {
                continue;
            };
            let vlast = [p.interior.last(), q.interior.last()].map(|x| x.copied().unwrap_or(u));
            let vx = others(g, v, &vlast);
            let c = Candidate::new(&[("u", u), ("v", v), ("p1", p.first()), ("q1", q.first())])
                .remove([u, v])
                .remove(p.interior.iter().chain(&q.interior).copied())
                .mark([ux.first()])
                .mark(vx)
                .dominators([u, v])
                .dominators(long_dominators(&[p, q]))
                .ell(long_count(&[p, q]));
            if f.offer(c) {
                return;
            }
        }
    }
}

pub(crate) fn red_red_parallel(f: &mut Finder<'_>) {
    parallel_pair(f, Red, Red);
}

pub(crate) fn red_green_parallel(f: &mut Finder<'_>) {
    parallel_pair(f, Red, Green);
}

pub(crate) fn green_green(f: &mut Finder<'_>) {
    let g = f.g;
    for (u, a) in nodes(g) {
        for (p, q) in arm_pairs(&a) {
            if !(colored(p, Green) && colored(q, Green)) || p.first() > q.first() {
                continue;
            }
            let Some(x) = third_arm(&a, p.first(), q.first()) else {
                continue;
            };
            let c = Candidate::new(&[("u", u), ("v", p.end), ("w", q.end)])
                .remove([u])
                .remove(p.interior.iter().chain(&q.interior).copied())
                .mark([x.first()])
                .dominators([u])
                .dominators(long_dominators(&[p, q]))
                .ell(long_count(&[p, q]));
            if f.offer(c) {
                return;
            }
        }
    }
}

/// Colored paths `u1 u2 u3 u4` with edge colors `(c12, c23, c34)`: the arm
/// from `u2` to `u1`, the arm from `u2` to `u3`, the arms at `u3` and the
/// arm from `u3` to `u4`.
fn three_paths(
    g: &MarkedGraph,
    c12: EdgeColor,
    c23: EdgeColor,
    c34: EdgeColor,
) -> Vec<(Vec<Arm>, Arm, Arm, Vec<Arm>, Arm)> {
    let mut out = Vec::new();
    for (u2, a2) in nodes(g) {
        for (p, r) in arm_pairs(&a2) {
            if !(colored(p, c12) && colored(r, c23)) {
                continue;
            }
            let Some(a3) = far(g, r) else { continue };
            let back = reverse(g, r);
            for s in &a3 {
                if s.first() == back.first() || !colored(s, c34) {
                    continue;
                }
                if !all_distinct(&[p.end, u2, r.end, s.end]) {
                    continue;
                }
                out.push((a2.clone(), p.clone(), r.clone(), a3.clone(), s.clone()));
            }
        }
    }
    out
}

pub(crate) fn green_red_green(f: &mut Finder<'_>) {
    let g = f.g;
    for (a2, p, r, a3, s) in three_paths(g, Green, Red, Green) {
        let (u2, u3) = (r.start, r.end);
        let back = reverse(g, &r);
        let (Some(t2), Some(t3)) = (
            third_arm(&a2, p.first(), r.first()),
            third_arm(&a3, back.first(), s.first()),
        ) else {
            continue;
        };
        let c = Candidate::new(&[("u1", p.end), ("u2", u2), ("u3", u3), ("u4", s.end)])
            .remove([u2, u3])
            .remove(p.interior.iter().chain(&r.interior).chain(&s.interior).copied())
            .mark([t2.first(), t3.first()])
            .dominators([u2, u3])
            .dominators(long_dominators(&[&p, &r, &s]))
            .ell(long_count(&[&p, &r, &s]));
        if f.offer(c) {
            return;
        }
    }
}

pub(crate) fn long_red_black_star(f: &mut Finder<'_>) {
    let g = f.g;
    for (u, a) in nodes(g) {
        let reds: Vec<&Arm> = a.iter().filter(|x| colored(x, Red) && x.long).collect();
        let blacks = a.iter().filter(|x| x.is(Black)).count();
        if reds.len() != 1 || blacks != 2 {
            continue;
        }
        let r = reds[0];
        let c = Candidate::new(&[("u", u), ("v", r.end)])
            .remove([u])
            .remove(r.interior.iter().copied())
            .dominators([r.at(1), r.at(4)]);
        if f.offer(c) {
            return;
        }
    }
}

pub(crate) fn green_red_red(f: &mut Finder<'_>) {
    let g = f.g;
    for (a2, p, r, a3, s) in three_paths(g, Green, Red, Red) {
        let (u2, u3) = (r.start, r.end);
        let back = reverse(g, &r);
        let (Some(t2), Some(t3)) = (
            third_arm(&a2, p.first(), r.first()),
            third_arm(&a3, back.first(), s.first()),
        ) else {
            continue;
        };
        let c = Candidate::new(&[("u1", p.end), ("u2", u2), ("u3", u3), ("u4", s.end)])
            .remove([u2, u3, s.at(1)])
            .remove(p.interior.iter().chain(&r.interior).copied())
            .mark([t2.first(), t3.first()])
            .dominators([u2, u3])
            .dominators(long_dominators(&[&p, &r]))
            .ell(long_count(&[&p, &r]));
        if f.offer(c) {
            return;
        }
    }
}

/// Red cycles `u1 .. uk` of the multigraph with `k >= 3`, as the arms
/// leaving each node along the cycle.
fn red_cycles(g: &MarkedGraph, limit: usize) -> Vec<Vec<Arm>> {
    fn extend(g: &MarkedGraph, path: &mut Vec<Arm>, out: &mut Vec<Vec<Arm>>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        let start = path[0].start;
        let last = path.last().expect("nonempty");
        let u = last.end;
        let Some(a) = arms(g, u) else { return };
        let back = reverse(g, last).first();
        for x in a.iter().filter(|x| colored(x, Red) && x.first() != back) {
            if x.end == start {
                if path.len() >= 2 && path[0].end < u {
                    let mut c = path.clone();
                    c.push(x.clone());
                    out.push(c);
                }
            } else if x.end > start && path.iter().all(|y| y.end != x.end) {
                path.push(x.clone());
                extend(g, path, out, limit);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for (u, a) in nodes(g) {
        for x in a.iter().filter(|x| colored(x, Red) && x.end > u) {
            extend(g, &mut vec![x.clone()], &mut out, limit);
        }
    }
    out
}

pub(crate) fn red_cycle(f: &mut Finder<'_>) {
    let g = f.g;
    for cyc in red_cycles(g, 64) {
        let mut c = Candidate::new(&[("u1", cyc[0].start), ("u2", cyc[0].end)]);
        let refs: Vec<&Arm> = cyc.iter().collect();
        for (i, x) in cyc.iter().enumerate() {
            let prev = &cyc[(i + cyc.len() - 1) % cyc.len()];
            let into = prev.interior.last().copied().unwrap_or(prev.start);
            let Some(a) = arms(g, x.start) else { return };
            if let Some(t) = third_arm(&a, x.first(), into) {
                c = c.mark([t.first()]);
            }
            c = c.remove([x.start]).remove(x.interior.iter().copied());
        }
        let c = c
            .dominators(cyc.iter().map(|x| x.start))
            .dominators(long_dominators(&refs))
            .ell(long_count(&refs))
            .size(cyc.len() as u32);
        if f.offer(c) {
            return;
        }
    }
}

/// Red paths of the multigraph `u_1 .. u_{len+1}` with distinct inner
/// nodes, as the arms from `u_2`, from `u_2` onward and their starts' arms.
fn red_paths(g: &MarkedGraph, len: usize) -> Vec<Vec<Arm>> {
    // arms[0] runs from u2 back to u1; arms[i] for i >= 1 from u_{i+1} to u_{i+2}
    let mut out = Vec::new();
    for (u2, a) in nodes(g) {
        for (first, second) in arm_pairs(&a) {
            if !(colored(first, Red) && colored(second, Red)) {
                continue;
            }
            let mut path = vec![first.clone(), second.clone()];
            grow(g, &mut path, len, u2, &mut out);
        }
    }
    out
}

fn grow(g: &MarkedGraph, path: &mut Vec<Arm>, len: usize, u2: VertexId, out: &mut Vec<Vec<Arm>>) {
    if path.len() == len {
        out.push(path.clone());
        return;
    }
    let last = path.last().expect("nonempty").clone();
    let Some(a) = arms(g, last.end) else { return };
    let back = reverse(g, &last).first();
    for x in a.iter().filter(|x| colored(x, Red) && x.first() != back) {
        let inner: Vec<VertexId> = std::iter::once(u2).chain(path[1..].iter().map(|y| y.end)).collect();
        // the next node is inner unless this is the final edge
        if path.len() + 1 < len && inner.contains(&x.end) {
            continue;
        }
        path.push(x.clone());
        grow(g, path, len, u2, out);
        path.pop();
    }
}

/// Marks the third neighbor of each inner node of a red path.
fn mark_thirds(g: &MarkedGraph, path: &[Arm], mut c: Candidate) -> Option<Candidate> {
    for i in 1..path.len() {
        let x = &path[i];
        let into = if i == 1 {
            path[0].first()
        } else {
            let prev = &path[i - 1];
            prev.interior.last().copied().unwrap_or(prev.start)
        };
        let a = arms(g, x.start)?;
        c = c.mark([third_arm(&a, x.first(), into)?.first()]);
    }
    Some(c)
}

pub(crate) fn red_four_path(f: &mut Finder<'_>) {
    let g = f.g;
    for path in red_paths(g, 4) {
        // path: (u2->u1), (u2->u3), (u3->u4), (u4->u5)
        let (p21, p23, p34, p45) = (&path[0], &path[1], &path[2], &path[3]);
        let inner = [p23.start, p34.start, p45.start];
        let c = Candidate::new(&[
            ("u1", p21.end),
            ("u2", inner[0]),
            ("u3", inner[1]),
            ("u4", inner[2]),
            ("u5", p45.end),
        ])
        .remove(inner)
        .remove([p21.at(1), p45.at(1)])
        .remove(p23.interior.iter().chain(&p34.interior).copied())
        .dominators(inner)
        .dominators(long_dominators(&[p23, p34]))
        .ell(long_count(&[p23, p34]));
        let Some(c) = mark_thirds(g, &path[..3], c) else {
            continue;
        };
        if f.offer(c) {
            return;
        }
    }
}

pub(crate) fn red_long_red_red(f: &mut Finder<'_>) {
    let g = f.g;
    for path in red_paths(g, 3) {
        let (p21, p23, p34) = (&path[0], &path[1], &path[2]);
        if !p23.long || !all_distinct(&[p21.end, p23.start, p34.start, p34.end]) {
            continue;
        }
        let (u2, u3) = (p23.start, p34.start);
        let c = Candidate::new(&[("u1", p21.end), ("u2", u2), ("u3", u3), ("u4", p34.end)])
            .remove([u2, u3, p21.at(1), p34.at(1)])
            .remove(p23.interior.iter().copied())
            .dominators([u2, u3, p23.at(3)]);
        let Some(c) = mark_thirds(g, &path[..], c) else {
            continue;
        };
        if f.offer(c) {
            return;
        }
    }
}

/// Double stars `u3 u4` whose center edge is red: the arms at `u3` (center
/// arm first) and at `u4` (center arm first).
fn red_double_stars(g: &MarkedGraph) -> Vec<(Vec<Arm>, Vec<Arm>)> {
    let mut out = Vec::new();
    for (u3, a) in nodes(g) {
        for center in a.iter().filter(|x| colored(x, Red)) {
            let Some(b) = far(g, center) else { continue };
            let back = reverse(g, center);
            let mut left = vec![center.clone()];
            left.extend(a.iter().filter(|x| x.first() != center.first()).cloned());
            let mut right = vec![back.clone()];
            right.extend(b.iter().filter(|x| x.first() != back.first()).cloned());
            if !all_distinct(&[u3, center.end, left[1].end, left[2].end, right[1].end, right[2].end]) {
                continue;
            }
            out.push((left, right));
        }
    }
    out
}

pub(crate) fn red_double_star_black(f: &mut Finder<'_>) {
    let g = f.g;
    for (left, right) in red_double_stars(g) {
        if !(right[1].is(Black) && right[2].is(Black)) {
            continue;
        }
        let (center, u3) = (&left[0], left[0].start);
        for (r, b) in [(&left[1], &left[2]), (&left[2], &left[1])] {
            if !(colored(r, Red) && b.is(Black)) {
                continue;
            }
            let c = Candidate::new(&[("u1", r.end), ("u2", b.end), ("u3", u3), ("u4", center.end)])
                .remove([u3, center.end])
                .remove(r.interior.iter().chain(&center.interior).copied())
                .dominators([r.at(1), center.at(2)]);
            if f.offer(c) {
                return;
            }
        }
    }
}

pub(crate) fn red_double_star_red(f: &mut Finder<'_>) {
    let g = f.g;
    for (left, right) in red_double_stars(g) {
        if !left.iter().chain(&right).all(|x| colored(x, Red)) {
            continue;
        }
        let (u3, u4) = (left[0].start, left[0].end);
        let c = Candidate::new(&[("u3", u3), ("u4", u4)])
            .remove([u3, u4])
            .remove(g.neighbors(u3).chain(g.neighbors(u4)))
            .dominators([u3, u4]);
        if f.offer(c) {
            return;
        }
    }
}

/// Stars whose three arms are red, with the leaves distinct.
fn red_stars(g: &MarkedGraph) -> Vec<(VertexId, Vec<Arm>)> {
    nodes(g)
        .filter(|(v, a)| a.iter().all(|x| colored(x, Red)) && all_distinct(&[*v, a[0].end, a[1].end, a[2].end]))
        .collect()
}

fn common_neighbors(g: &MarkedGraph, a: VertexId, b: VertexId) -> Vec<VertexId> {
    g.neighbors(a).filter(|&x| g.has_edge(x, b)).collect()
}

fn star_base(v: VertexId, a: &[Arm]) -> Candidate {
    Candidate::new(&[("v", v), ("v1", a[0].end), ("v2", a[1].end), ("v3", a[2].end)])
        .remove([v])
        .remove(a.iter().flat_map(|x| x.interior.iter().copied()))
}

pub(crate) fn red_star_apart(f: &mut Finder<'_>) {
    let g = f.g;
    for (v, a) in red_stars(g) {
        for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
            let (x, y, z) = (&a[i], &a[j], &a[k]);
            if !common_neighbors(g, x.end, y.end).is_empty() || x.long || y.long || z.long {
                continue;
            }
            let c = Candidate::new(&[("v", v), ("v1", x.end), ("v2", y.end), ("v3", z.end)])
                .remove([v, x.end, y.end])
                .remove(a.iter().flat_map(|x| x.interior.iter().copied()))
                .dominators([x.at(2), y.at(2), z.at(1)]);
            if f.offer(c) {
                return;
            }
        }
    }
}

pub(crate) fn red_star_common(f: &mut Finder<'_>) {
    let g = f.g;
    for (v, a) in red_stars(g) {
        let ends = [a[0].end, a[1].end, a[2].end];
        for w in common_neighbors(g, ends[0], ends[1]) {
            if !g.has_edge(w, ends[2]) || w == v {
                continue;
            }
            let mut c = star_base(v, &a).remove(ends).remove([w]);
            for x in &a {
                let last = x.interior.last().copied().unwrap_or(v);
                c = c.mark(others(g, x.end, &[last, w]));
            }
            let c = c.dominators([v]).dominators(ends);
            if f.offer(c) {
                return;
            }
        }
    }
}

pub(crate) fn red_star_triangle(f: &mut Finder<'_>) {
    let g = f.g;
    for (v, a) in red_stars(g) {
        let ends = [a[0].end, a[1].end, a[2].end];
        let pick = |i: usize, j: usize| common_neighbors(g, ends[i], ends[j]).into_iter().find(|&x| x != v);
        let (Some(v12), Some(v13), Some(v23)) = (pick(0, 1), pick(0, 2), pick(1, 2)) else {
            continue;
        };
        if !all_distinct(&[v12, v13, v23]) {
            continue;
        }
        let c = star_base(v, &a)
            .remove(ends)
            .remove([v12, v13, v23])
            .dominators([v])
            .dominators(ends);
        if f.offer(c) {
            return;
        }
    }
}

pub(crate) fn red_red_green_star(f: &mut Finder<'_>) {
    let g = f.g;
    for (v, a) in nodes(g) {
        let reds = a.iter().filter(|x| colored(x, Red)).count();
        let greens = a.iter().filter(|x| colored(x, Green)).count();
        if reds != 2 || greens != 1 {
            continue;
        }
        let c = Candidate::new(&[("v", v)])
            .remove([v])
            .remove(g.neighbors(v))
            .dominators([v]);
        if f.offer(c) {
            return;
        }
    }
}

pub(crate) fn gbr_triangle(f: &mut Finder<'_>) {
    let g = f.g;
    for (u, a) in nodes(g) {
        for (r, b) in arm_pairs(&a) {
            if !(colored(r, Red) && !r.long && b.is(Black)) {
                continue;
            }
            let (v, w) = (r.end, b.end);
            let Some(av) = arms(g, v) else { continue };
            let back = reverse(g, r);
            for gr in av
                .iter()
                .filter(|x| colored(x, Green) && x.end == w && x.first() != back.first())
            {
                let (Some(tu), Some(tv)) = (third_arm(&a, r.first(), w), third_arm(&av, back.first(), gr.first()))
                else {
                    continue;
                };
                let c = Candidate::new(&[("u", u), ("v", v), ("w", w)])
                    .remove([u, v, w])
                    .remove(r.interior.iter().chain(&gr.interior).copied())
                    .mark([tu.first(), tv.first()])
                    .dominators([u, v])
                    .dominators(gr.long_dominator())
                    .ell(u32::from(gr.long));
                if f.offer(c) {
                    return;
                }
            }
        }
    }
}

/// A red edge `uv` next to a long green edge `vw`: the arm from `v` to
/// `u`, the arm from `v` to `w` and the arms at `v`.
fn red_beside_long_green(g: &MarkedGraph) -> Vec<(Arm, Arm, Vec<Arm>)> {
    let mut out = Vec::new();
    for (v, a) in nodes(g) {
        for (r, gr) in arm_pairs(&a) {
            if colored(r, Red) && !r.long && colored(gr, Green) && gr.long && all_distinct(&[v, r.end, gr.end]) {
                out.push((r.clone(), gr.clone(), a.clone()));
            }
        }
    }
    out
}

pub(crate) fn long_green_red_unmarked(f: &mut Finder<'_>) {
    let g = f.g;
    for (r, gr, _) in red_beside_long_green(g) {
        if gr.interior.iter().any(|&x| g.is_marked(x)) {
            continue;
        }
        let (v, w) = (r.start, gr.end);
        let c = Candidate::new(&[("u", r.end), ("v", v), ("w", w)])
            .remove([v, w])
            .remove(r.interior.iter().chain(&gr.interior).copied())
            .mark(others(g, w, &[gr.at(4)]))
            .dominators([r.at(1), gr.at(2), w]);
        if f.offer(c) {
            return;
        }
    }
}

pub(crate) fn long_green_red_mark_near(f: &mut Finder<'_>) {
    let g = f.g;
    for (r, gr, a) in red_beside_long_green(g) {
        if !g.is_marked(gr.at(2)) {
            continue;
        }
        let (v, w) = (r.start, gr.end);
        let Some(t) = third_arm(&a, r.first(), gr.first()) else {
            continue;
        };
        let c = Candidate::new(&[("u", r.end), ("v", v), ("w", w)])
            .remove([v, w, r.at(1)])
            .remove(gr.interior.iter().copied())
            .mark([t.first()])
            .dominators([v, gr.at(4)]);
        if f.offer(c) {
            return;
        }
    }
}

pub(crate) fn long_green_red_mark_far(f: &mut Finder<'_>) {
    let g = f.g;
    for (r, gr, _) in red_beside_long_green(g) {
        if !g.is_marked(gr.at(3)) {
            continue;
        }
        let (u, v, w) = (r.end, r.start, gr.end);
        let c = Candidate::new(&[("u", u), ("v", v), ("w", w)])
            .remove([u, v, w])
            .remove(r.interior.iter().chain(&gr.interior).copied())
            .mark(others(g, w, &[gr.at(4)]))
            .dominators([r.at(2), gr.at(1), w]);
        if f.offer(c) {
            return;
        }
    }
}

fn long_greens(g: &MarkedGraph) -> Vec<Arm> {
    nodes(g)
        .flat_map(|(_, a)| a.into_iter().filter(|x| colored(x, Green) && x.long))
        .collect()
}

pub(crate) fn long_green_unmarked(f: &mut Finder<'_>) {
    let g = f.g;
    for x in long_greens(g) {
        if x.start > x.end || x.interior.iter().any(|&y| g.is_marked(y)) {
            continue;
        }
        let c = Candidate::new(&[("u", x.start), ("v", x.end)])
            .remove([x.start, x.end])
            .remove(x.interior.iter().copied())
            .dominators([x.at(1), x.at(4)]);
        if f.offer(c) {
            return;
        }
    }
}

pub(crate) fn long_green_marked(f: &mut Finder<'_>) {
    let g = f.g;
    for x in long_greens(g) {
        if !g.is_marked(x.at(3)) {
            continue;
        }
        let (u, v) = (x.start, x.end);
        let c = Candidate::new(&[("u", u), ("v", v)])
            .remove([u, v])
            .remove(x.interior.iter().copied())
            .mark(others(g, v, &[x.at(4)]))
            .dominators([x.at(1), v]);
        if f.offer(c) {
            return;
        }
    }
}

/// Green-black-green paths `u u' v v'` with short greens: the arm from `u`
/// to `u'`, the arms at `u'`, the arms at `v` and the arm from `v` to `v'`.
fn gbg_paths(g: &MarkedGraph) -> Vec<(Vec<Arm>, Arm, Vec<Arm>, Vec<Arm>, Arm)> {
    let mut out = Vec::new();
    for (u, au) in nodes(g) {
        for x in au.iter().filter(|x| x.is_short(Green) && !x.is_loop()) {
            let up = x.end;
            let Some(aup) = arms(g, up) else { continue };
            for b in aup.iter().filter(|b| b.is(Black)) {
                let v = b.end;
                let Some(av) = arms(g, v) else { continue };
                for y in av.iter().filter(|y| y.is_short(Green) && !y.is_loop()) {
                    if all_distinct(&[u, up, v, y.end]) {
                        out.push((au.clone(), x.clone(), aup.clone(), av.clone(), y.clone()));
                    }
                }
            }
        }
    }
    out
}

fn gbg_stars(f: &mut Finder<'_>, red: bool) {
    let g = f.g;
    for (au, x, aup, av, y) in gbg_paths(g) {
        let (u, up, v) = (x.start, x.end, y.start);
        let ustars: Vec<&Arm> = au.iter().filter(|b| b.is(Black) && is_black_star(g, b.end)).collect();
        let vstars: Vec<&Arm> = av
            .iter()
            .filter(|b| b.is(Black) && b.end != up && is_black_star(g, b.end))
            .collect();
        let into_up = x.interior[0];
        let Some(third_up) = aup.iter().find(|b| b.first() != into_up && b.end != v) else {
            continue;
        };
        let third_ok = if red {
            third_up.is_short(Red) && !third_up.is_loop()
        } else {
            third_up.is(Black)
        };
        if !third_ok {
            continue;
        }
        for us in &ustars {
            for vs in &vstars {
                if !all_distinct(&[u, up, v, y.end, us.end, vs.end]) {
                    continue;
                }
                let Some(t) = third_arm(&au, x.first(), us.first()) else {
                    continue;
                };
                let mut c = Candidate::new(&[
                    ("u", u),
                    ("u'", up),
                    ("v", v),
                    ("v'", y.end),
                    ("u*", us.end),
                    ("v*", vs.end),
                ])
                .remove([u, v, us.end, vs.end, up, x.at(1), y.at(1)])
                .mark([t.first()])
                .dominators([u, v]);
                if red {
                    c = c
                        .remove([third_up.end])
                        .remove(third_up.interior.iter().copied())
                        .dominators([third_up.at(2)]);
                }
                if f.offer(c) {
                    return;
                }
            }
        }
    }
}

pub(crate) fn gbg_stars_black(f: &mut Finder<'_>) {
    gbg_stars(f, false);
}

pub(crate) fn gbg_stars_red(f: &mut Finder<'_>) {
    gbg_stars(f, true);
}

pub(crate) fn consecutive_reds(f: &mut Finder<'_>) {
    let g = f.g;
    for (_, x, aup, av, y) in gbg_paths(g) {
        let (u, up, v, vp) = (x.start, x.end, y.start, y.end);
        let into_up = x.interior[0];
        let Some(red_up) = aup
            .iter()
            .find(|b| b.first() != into_up && b.end != v && b.is_short(Red) && !b.is_loop())
        else {
            continue;
        };
        let Some(v_third) = av.iter().find(|b| b.first() != y.first() && b.end != up) else {
            continue;
        };
        if !v_third.is(Black) || !aup.iter().any(|b| b.is(Black) && b.end == v) {
            continue;
        }
        let Some(avp) = arms(g, vp) else { continue };
        let into_vp = y.interior[0];
        for red_vp in avp
            .iter()
            .filter(|b| b.first() != into_vp && b.is_short(Red) && !b.is_loop())
        {
            if red_vp.first() == red_up.interior.last().copied().unwrap_or(up) {
                continue;
            }
            let Some(t) = third_arm(&avp, into_vp, red_vp.first()) else {
                continue;
            };
            let c = Candidate::new(&[("u", u), ("u'", up), ("v", v), ("v'", vp)])
                .remove([up, v, vp, red_up.at(1), red_vp.at(1), x.at(1), y.at(1)])
                .mark([t.first()])
                .dominators([up, vp]);
            if f.offer(c) {
                return;
            }
        }
    }
}

/// Stars at `v` with one green arm whose black arms all end at black star
/// centers, with `reds` red arms.
fn green_star(f: &mut Finder<'_>, reds: usize) {
    let g = f.g;
    for (v, a) in nodes(g) {
        let greens = a.iter().filter(|x| colored(x, Green)).count();
        let red_count = a.iter().filter(|x| colored(x, Red)).count();
        let blacks: Vec<&Arm> = a.iter().filter(|x| x.is(Black)).collect();
        if greens != 1 || red_count != reds || blacks.len() != 2 - reds {
            continue;
        }
        if !blacks.iter().all(|b| is_black_star(g, b.end)) {
            continue;
        }
        let c = Candidate::new(&[("v", v)])
            .remove([v])
            .remove(g.neighbors(v))
            .dominators([v]);
        if f.offer(c) {
            return;
        }
    }
}

pub(crate) fn black_black_green_star(f: &mut Finder<'_>) {
    green_star(f, 0);
}

pub(crate) fn red_black_green_star(f: &mut Finder<'_>) {
    green_star(f, 1);
}
