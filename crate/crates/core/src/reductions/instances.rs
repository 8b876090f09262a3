//! Random graphs with a planted occurrence of a rule's configuration.
//!
//! Each generator builds the core of the configuration, pads every open
//! degree slot with small random trees and shuffles the vertex ids. Tree
//! padding adds no cycles, so the cycle hypotheses of a rule hold whenever
//! the core satisfies them.

use super::{detect, Match, ReductionRule};
use crate::graph::{MarkedGraph, VertexId};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Interior orders of colored edges.
const GREEN: usize = 1;
const RED: usize = 2;
const LONG_GREEN: usize = 4;
const LONG_RED: usize = 5;

/// Default bound on the order of planted graphs.
pub const DEFAULT_MAX_ORDER: usize = 22;

#[derive(Debug, Clone, Copy)]
enum Target {
    /// Pad up to this degree with random trees.
    Exact(usize),
    /// Pad up to degree 3 with cubic claws, so every added arm is black.
    Claws,
    /// Pad up to degree 3 with single leaves.
    Leaves,
    /// Pad up to a random degree between the current one (at least 1) and 3.
    Outer,
}

/// A configuration under construction.
struct Plant {
    g: MarkedGraph,
    targets: Vec<(VertexId, Target)>,
}

impl Plant {
    fn new() -> Self {
        Plant {
            g: MarkedGraph::new(0),
            targets: Vec::new(),
        }
    }

    fn v(&mut self) -> VertexId {
        self.g.add_vertex(false)
    }

    fn marked(&mut self) -> VertexId {
        self.g.add_vertex(true)
    }

    fn vs<const N: usize>(&mut self) -> [VertexId; N] {
        std::array::from_fn(|_| self.v())
    }

    fn e(&mut self, a: VertexId, b: VertexId) {
        self.g.add_edge(a, b).expect("planted edge fits");
    }

    /// Joins `a` and `b` through `k` new unmarked degree-2 vertices.
    fn path(&mut self, a: VertexId, b: VertexId, k: usize) -> Vec<VertexId> {
        let inner: Vec<VertexId> = (0..k).map(|_| self.v()).collect();
        let mut prev = a;
        for &x in &inner {
            self.e(prev, x);
            prev = x;
        }
        self.e(prev, b);
        inner
    }

    fn fill(&mut self, v: VertexId, degree: usize) {
        self.targets.push((v, Target::Exact(degree)));
    }

    fn cubic(&mut self, vs: &[VertexId]) {
        for &v in vs {
            self.fill(v, 3);
        }
    }

    fn claws(&mut self, vs: &[VertexId]) {
        for &v in vs {
            self.targets.push((v, Target::Claws));
        }
    }

    fn leaves(&mut self, vs: &[VertexId]) {
        for &v in vs {
            self.targets.push((v, Target::Leaves));
        }
    }

    fn outer(&mut self, vs: &[VertexId]) {
        for &v in vs {
            self.targets.push((v, Target::Outer));
        }
    }

    fn leaf(&mut self, at: VertexId, rng: &mut ChaCha8Rng) {
        let x = self.g.add_vertex(rng.gen_bool(0.6));
        self.e(at, x);
    }

    fn claw(&mut self, at: VertexId, rng: &mut ChaCha8Rng) {
        let c = self.v();
        self.e(at, c);
        self.leaf(c, rng);
        self.leaf(c, rng);
    }

    /// Pads the open slots, shuffles ids and rejects graphs above `cap`.
    fn finish(mut self, rng: &mut ChaCha8Rng, cap: usize) -> Option<MarkedGraph> {
        for (v, t) in std::mem::take(&mut self.targets) {
            let d = self.g.degree(v);
            let want = match t {
                Target::Exact(k) => k,
                Target::Claws | Target::Leaves => 3,
                Target::Outer => rng.gen_range(d.max(1)..=3),
            };
            for _ in d..want {
                match t {
                    Target::Claws => self.claw(v, rng),
                    Target::Leaves => self.leaf(v, rng),
                    _ if rng.gen_bool(0.7) => self.leaf(v, rng),
                    _ => self.claw(v, rng),
                }
            }
        }
        if self.g.n() > cap {
            return None;
        }
        let mut perm: Vec<VertexId> = self.g.vertices().collect();
        perm.shuffle(rng);
        Some(self.g.permuted(&perm))
    }
}

fn red(long: bool) -> usize {
    if long {
        LONG_RED
    } else {
        RED
    }
}

fn green(long: bool) -> usize {
    if long {
        LONG_GREEN
    } else {
        GREEN
    }
}

/// Long flags for `arms` arms with at most `max` long ones.
fn longs(rng: &mut ChaCha8Rng, arms: usize, max: usize) -> Vec<bool> {
    loop {
        let f: Vec<bool> = (0..arms).map(|_| rng.gen_bool(0.4)).collect();
        if f.iter().filter(|&&x| x).count() <= max {
            return f;
        }
    }
}

/// A cycle of `len` cubic vertices, each with a pendant neighbor.
fn cycle_with_pendants(p: &mut Plant, len: usize) -> (Vec<VertexId>, Vec<VertexId>) {
    let c: Vec<VertexId> = (0..len).map(|_| p.v()).collect();
    for i in 0..len {
        p.e(c[i], c[(i + 1) % len]);
    }
    let u: Vec<VertexId> = (0..len).map(|_| p.v()).collect();
    for i in 0..len {
        p.e(c[i], u[i]);
    }
    (c, u)
}

/// Pendant vertices that end up as leaves, marked at random.
fn leafy(p: &mut Plant, us: &[VertexId], rng: &mut ChaCha8Rng) {
    for &u in us {
        p.g.set_marked(u, rng.gen_bool(0.7));
    }
}

/// The largest order `plant` produces for `rule_id`.
pub fn max_order(rule_id: &str) -> usize {
    match rule_id {
        "R-girth-10-final" => 30,
        _ => DEFAULT_MAX_ORDER,
    }
}

/// One random graph with a planted configuration of `rule_id`, or `None`
/// when the attempt exceeds the order bound or the id is unknown.
pub fn plant(rule_id: &str, rng: &mut ChaCha8Rng) -> Option<MarkedGraph> {
    let mut p = Plant::new();
    match rule_id {
        "R-marked-isolated" => {
            p.marked();
            let x = p.v();
            p.outer(&[x]);
        }
        "R-unmark-deg3" => {
            let m = p.marked();
            p.fill(m, 3);
        }
        "R-unmarked-isolated" => {
            p.v();
            let x = p.marked();
            p.outer(&[x]);
        }
        "R-unmarked-leaf" => {
            let [u, w] = p.vs();
            p.e(u, w);
            p.outer(&[w]);
        }
        "R-marked-marked-edge" => {
            let (a, b) = (p.marked(), p.marked());
            p.e(a, b);
            p.outer(&[a, b]);
        }
        "R-marked-leaf" => {
            let u = p.marked();
            let w = p.v();
            p.e(u, w);
            p.outer(&[w]);
        }
        "R-marked-beside-deg3" => {
            let u = p.marked();
            let [v, w] = p.vs();
            p.e(u, v);
            p.e(u, w);
            p.cubic(&[v]);
            p.outer(&[w]);
        }
        "R-2path-from-marked" => {
            let u0 = p.v();
            let u1 = p.marked();
            let u5 = p.v();
            p.e(u0, u1);
            p.path(u1, u5, 3);
            p.outer(&[u0, u5]);
        }
        "R-marked-close:d2-near" | "R-marked-close:d2-far" => {
            let [u0, u1] = p.vs();
            let u2 = p.marked();
            let u3 = p.v();
            let u4 = p.marked();
            let [u5, u6] = p.vs();
            for (a, b) in [(u0, u1), (u1, u2), (u2, u3), (u3, u4), (u4, u5), (u5, u6)] {
                p.e(a, b);
            }
            if rule_id.ends_with("near") {
                if rng.gen_bool(0.5) {
                    p.g.set_marked(u0, true);
                    p.outer(&[u0]);
                } else {
                    p.fill(u0, 3);
                }
                p.outer(&[u6]);
            } else {
                let [a, b] = p.vs();
                p.e(u0, a);
                p.e(u6, b);
                p.outer(&[a, b]);
            }
        }
        "R-marked-close:d3-path" | "R-marked-close:d3-cubic" => {
            let [u0, u1] = p.vs();
            let u2 = p.marked();
            let [u3, u4] = p.vs();
            let u5 = p.marked();
            let [u6, u7] = p.vs();
            for (a, b) in [(u0, u1), (u1, u2), (u2, u3), (u3, u4), (u4, u5), (u5, u6), (u6, u7)] {
                p.e(a, b);
            }
            if rule_id.ends_with("path") {
                let u8 = p.v();
                p.e(u7, u8);
                p.outer(&[u0, u8]);
            } else {
                p.cubic(&[u0, u7]);
            }
        }
        "R-cycle-component" => {
            let n = *[6usize, 8, 9, 10, 11, 12, 14, 17, 20].choose(rng).expect("nonempty");
            let c: Vec<VertexId> = (0..n).map(|_| p.v()).collect();
            for i in 0..n {
                p.e(c[i], c[(i + 1) % n]);
            }
            if n <= 18 && rng.gen_bool(0.5) {
                let x = p.v();
                p.outer(&[x]);
            }
        }
        "R-2path-6" => {
            let [u0, u7] = p.vs();
            p.path(u0, u7, 6);
            p.fill(u0, 3);
            p.outer(&[u7]);
        }
        "R-2path-3" => {
            let [u0, u4] = p.vs();
            p.path(u0, u4, 3);
            p.cubic(&[u0, u4]);
        }
        "R-multigraph-loop" => {
            let [u, v] = p.vs();
            let xs: [VertexId; 5] = p.vs();
            p.e(u, xs[0]);
            for i in 0..4 {
                p.e(xs[i], xs[i + 1]);
            }
            p.e(xs[4], u);
            p.e(u, v);
            p.outer(&[v]);
        }
        "R-multigraph-black-green" => {
            let [u, v] = p.vs();
            p.e(u, v);
            p.path(u, v, LONG_GREEN);
            p.outer(&[u, v]);
            p.fill(u, 3);
            p.fill(v, 3);
        }
        "R-multigraph-green-green" => {
            let [u, v] = p.vs();
            p.path(u, v, LONG_GREEN);
            p.path(u, v, LONG_GREEN);
            p.cubic(&[u, v]);
        }
        "R-multigraph-red-red" => {
            let [u, v] = p.vs();
            let l = longs(rng, 2, 2);
            p.path(u, v, red(l[0]));
            p.path(u, v, red(l[1]));
            p.cubic(&[u, v]);
        }
        "R-multigraph-red-green" => {
            let [u, v] = p.vs();
            p.path(u, v, LONG_RED);
            p.path(u, v, LONG_GREEN);
            p.cubic(&[u, v]);
        }
        "R-green-green" => {
            let [u, v, w] = p.vs();
            let l = longs(rng, 2, 2);
            p.path(u, v, green(l[0]));
            p.path(u, w, green(l[1]));
            p.cubic(&[u]);
            p.claws(&[v, w]);
        }
        "R-green-red-green" | "R-green-red-red" => {
            let [u1, u2, u3, u4] = p.vs();
            let l = longs(rng, 3, if rule_id == "R-green-red-green" { 3 } else { 2 });
            p.path(u1, u2, green(l[0]));
            p.path(u2, u3, red(l[1]));
            if rule_id == "R-green-red-green" {
                p.path(u3, u4, green(l[2]));
            } else {
                p.path(u3, u4, RED);
            }
            p.cubic(&[u2, u3]);
            p.leaves(&[u1, u4]);
        }
        "R-longred-blackstar" => {
            let [u, v] = p.vs();
            p.path(u, v, LONG_RED);
            p.claws(&[u]);
            p.cubic(&[v]);
        }
        "R-red-cycle" => {
            let k = rng.gen_range(3..=4);
            let nodes: Vec<VertexId> = (0..k).map(|_| p.v()).collect();
            let l = longs(rng, k, 1);
            for i in 0..k {
                p.path(nodes[i], nodes[(i + 1) % k], red(l[i]));
            }
            p.outer(&nodes);
            p.cubic(&nodes);
        }
        "R-red-4path" => {
            let us: [VertexId; 5] = p.vs();
            let l = longs(rng, 2, 1);
            p.path(us[0], us[1], RED);
            p.path(us[1], us[2], red(l[0]));
            p.path(us[2], us[3], red(l[1]));
            p.path(us[3], us[4], RED);
            p.cubic(&us[1..4]);
            p.outer(&[us[0], us[4]]);
        }
        "R-red-longred-red" => {
            let us: [VertexId; 4] = p.vs();
            p.path(us[0], us[1], RED);
            p.path(us[1], us[2], LONG_RED);
            p.path(us[2], us[3], RED);
            p.cubic(&us[1..3]);
            p.outer(&[us[0], us[3]]);
        }
        "R-red-doublestar-black" => {
            let [u1, u3, u4] = p.vs();
            p.path(u3, u1, RED);
            p.path(u3, u4, RED);
            p.claws(&[u3, u4]);
            p.outer(&[u1]);
        }
        "R-red-doublestar-red" => {
            let [u3, u4] = p.vs();
            p.path(u3, u4, RED);
            let xs: [VertexId; 4] = p.vs();
            for (c, x) in [(u3, xs[0]), (u3, xs[1]), (u4, xs[2]), (u4, xs[3])] {
                p.path(c, x, RED);
            }
            p.e(xs[0], xs[2]);
            p.e(xs[1], xs[3]);
            p.leaves(&xs);
        }
        "R-red-star:apart" | "R-red-star:common" | "R-red-star:triangle" | "R-red-red-green-star" => {
            let [v, v1, v2, v3] = p.vs();
            let third = if rule_id == "R-red-red-green-star" { GREEN } else { RED };
            p.path(v, v1, RED);
            p.path(v, v2, RED);
            p.path(v, v3, third);
            match rule_id {
                "R-red-star:common" => {
                    let w = p.v();
                    for x in [v1, v2, v3] {
                        p.e(w, x);
                    }
                    p.outer(&[v1, v2, v3]);
                }
                "R-red-star:triangle" => {
                    let [a, b, c] = p.vs();
                    for (x, y, z) in [(a, v1, v2), (b, v1, v3), (c, v2, v3)] {
                        p.e(x, y);
                        p.e(x, z);
                    }
                    p.outer(&[a, b, c]);
                }
                _ => p.outer(&[v1, v2, v3]),
            }
        }
        "R-star:black-black-green" | "R-star:red-black-green" => {
            let [v, v1, v2, v3] = p.vs();
            p.path(v, v3, GREEN);
            p.e(v, v1);
            if rule_id == "R-star:red-black-green" {
                p.path(v, v2, RED);
                p.leaves(&[v2, v3]);
                p.claws(&[v1]);
            } else {
                p.e(v, v2);
                p.leaves(&[v3]);
                p.claws(&[v1, v2]);
            }
        }
        "R-gbr-triangle" => {
            let [u, v, w] = p.vs();
            p.path(u, v, RED);
            p.path(v, w, green(rng.gen_bool(0.5)));
            p.e(u, w);
            p.outer(&[u, v, w]);
        }
        "R-no-long-green:red-unmarked" | "R-no-long-green:red-mark-near" | "R-no-long-green:red-mark-far" => {
            let [u, v, w] = p.vs();
            p.path(u, v, RED);
            let g = p.path(v, w, LONG_GREEN);
            match rule_id {
                "R-no-long-green:red-mark-near" => p.g.set_marked(g[1], true),
                "R-no-long-green:red-mark-far" => p.g.set_marked(g[2], true),
                _ => {}
            }
            p.cubic(&[u, w]);
            p.outer(&[v]);
        }
        "R-no-long-green:unmarked" | "R-no-long-green:marked" => {
            let [u, v] = p.vs();
            let g = p.path(u, v, LONG_GREEN);
            if rule_id.ends_with(":marked") {
                p.g.set_marked(g[2], true);
            }
            p.cubic(&[u, v]);
        }
        "R-gbg-stars:black" | "R-gbg-stars:red" => {
            let [u, up, v, vp, us, vs] = p.vs();
            p.path(u, up, GREEN);
            p.e(up, v);
            p.path(v, vp, GREEN);
            p.e(u, us);
            p.e(v, vs);
            p.e(us, vs);
            p.claws(&[us, vs]);
            if rule_id.ends_with("red") {
                let w = p.v();
                p.path(up, w, RED);
                p.outer(&[w]);
            } else {
                p.claws(&[up]);
            }
            p.leaves(&[u, vp]);
        }
        "R-consecutive-reds" => {
            let [u, up, v, vp, ud, vd] = p.vs();
            p.path(u, up, GREEN);
            p.e(up, v);
            p.path(v, vp, GREEN);
            p.path(up, ud, RED);
            p.path(vp, vd, RED);
            p.claws(&[v]);
            p.leaves(&[u, ud, vd, vp]);
        }
        "R-red-adjacent" => {
            let [v, w, y, z] = p.vs();
            p.e(v, w);
            p.path(v, y, RED);
            p.path(w, z, RED);
            p.cubic(&[v, w]);
            p.outer(&[y, z]);
        }
        "R-red-edge:adjacent" | "R-red-edge:independent" => {
            let [u, v, u1, u2, v1, v2] = p.vs();
            p.path(u, v, RED);
            for (a, b) in [(u, u1), (u, u2), (v, v1), (v, v2)] {
                p.e(a, b);
            }
            if rule_id.ends_with("adjacent") {
                p.e(u1, v1);
            }
            p.outer(&[u1, u2, v1, v2]);
        }
        "R-6cycle:independent" | "R-6cycle:chord" => {
            let (_, u) = cycle_with_pendants(&mut p, 6);
            if rule_id.ends_with("chord") {
                p.e(u[0], u[3]);
            }
            p.outer(&u);
        }
        "R-girth-0mod3" | "R-girth-2mod3" | "R-girth-1mod3" => {
            let len = match rule_id {
                "R-girth-0mod3" => 9,
                "R-girth-1mod3" => 10,
                _ => 11,
            };
            let (_, u) = cycle_with_pendants(&mut p, len);
            leafy(&mut p, &u, rng);
            let spare = DEFAULT_MAX_ORDER - 2 * len;
            for _ in 0..rng.gen_range(0..=spare) {
                let &at = u.choose(rng).expect("nonempty");
                if p.g.degree(at) < 3 {
                    p.leaf(at, rng);
                }
            }
        }
        "R-girth-10-final" => {
            let (_, u) = cycle_with_pendants(&mut p, 10);
            let [w1, w6, w2, w7] = p.vs();
            p.e(u[0], w1);
            p.e(u[5], w6);
            p.e(w1, w6);
            p.e(u[1], w2);
            p.e(u[6], w7);
            p.e(w2, w7);
            for &x in &[u[0], u[5], u[1], u[6]] {
                p.leaf(x, rng);
            }
            leafy(&mut p, &[u[2], u[3], u[4], u[7], u[8], u[9]], rng);
            p.outer(&[w1, w6, w2, w7]);
        }
        _ => return None,
    }
    p.finish(rng, max_order(rule_id))
}

/// Planted graphs on which `rule` certifies a match, with that match.
/// Stops after `count` hits or `attempts` tries.
pub fn planted_instances(rule: &ReductionRule, count: usize, seed: u64, attempts: usize) -> Vec<(MarkedGraph, Match)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..attempts {
        if out.len() == count {
            break;
        }
        let Some(g) = plant(rule.id, &mut rng) else { continue };
        if let Some(m) = detect(rule, &g) {
            out.push((g, m));
        }
    }
    out
}
