//! Score pairs `[a | b]` of the structures around a green-black cycle: `a`
//! is the weight surplus when side A is chosen and `b` when side B is.
//!
//! Every case function first normalises the context by the symmetries the
//! case analysis relies on (swapping sides, swapping two stars, renaming
//! the neighbors of one star) and maps the pair back afterwards.

use super::{fiber_schedule, link_schedule, ArtifactOrigin, CycleColoring, DischargeError, LinkState, Side, StarGroup};
use crate::rational::Rational12;
use serde::{Deserialize, Serialize};

/// Side and dotted flag of one cycle vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Spot {
    pub side: Side,
    pub dotted: bool,
}

impl Spot {
    pub const fn new(side: Side, dotted: bool) -> Self {
        Spot { side, dotted }
    }

    fn mirrored(self) -> Self {
        Spot {
            side: self.side.other(),
            dotted: self.dotted,
        }
    }

    fn is_a(self) -> bool {
        self.side == Side::A
    }

    fn is_b(self) -> bool {
        self.side == Side::B
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ScorePair {
    pub a: Rational12,
    pub b: Rational12,
}

impl ScorePair {
    pub fn new(a: i64, b: i64) -> Self {
        ScorePair {
            a: Rational12::int(a),
            b: Rational12::int(b),
        }
    }

    pub fn flat(v: Rational12) -> Self {
        ScorePair { a: v, b: v }
    }

    pub fn average(self) -> Rational12 {
        (self.a + self.b).half()
    }

    pub fn on(self, side: Side) -> Rational12 {
        match side {
            Side::A => self.a,
            Side::B => self.b,
        }
    }

    /// Componentwise comparison.
    pub fn at_least(self, other: ScorePair) -> bool {
        self.a >= other.a && self.b >= other.b
    }

    fn swapped(self) -> Self {
        ScorePair { a: self.b, b: self.a }
    }

    fn swapped_if(self, cond: bool) -> Self {
        if cond {
            self.swapped()
        } else {
            self
        }
    }
}

/// A structure together with the spots of the cycle vertices its case
/// analysis looks at.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum StructureContext {
    /// Red edge from cycle vertex `u`; `far` are the cycle vertices met by
    /// the two other edges at its far end.
    RedIsland {
        u: Spot,
        far: [Spot; 2],
    },
    /// Green edge `uv` off the cycle; `w` holds the cycle neighbors
    /// `[u1, u2, v3, v4]` of `u` and `v`.
    GreenIsland {
        w: [Spot; 4],
    },
    /// A vertex whose two other edges reach cycle vertices `ends`.
    GreenIsthmus {
        ends: [Spot; 2],
    },
    RedIsthmus,
    BlackDetour,
    SpecialBlack,
    SpecialRed {
        u: Spot,
    },
    /// Cycle neighbors `[v1, v2, v3]`; the narrow link joins `v1 v2`.
    Isolated3Star {
        v: [Spot; 3],
    },
    /// Cycle neighbors `[u1, u2]` of a star whose third neighbor is off
    /// the cycle and no other two-star center is next to it.
    Isolated2Star {
        u: [Spot; 2],
    },
    /// Cycle neighbors `[u1, u2, v1, v2]` of two adjacent two-star centers.
    Adjacent2Stars {
        w: [Spot; 4],
    },
    /// Cycle neighbors `[u1, u2, v1, v2]` of two two-star centers sharing
    /// an off-cycle neighbor.
    CommonNeighbor2Stars {
        w: [Spot; 4],
    },
    /// Cycle neighbors `[u1, u2, v1, w1, w2]`.
    TwoOneTwo {
        w: [Spot; 5],
    },
    /// Cycle neighbors `[u1, u2, v1]`.
    TwoOneNotTwo {
        w: [Spot; 3],
    },
    /// Schedule value of a single link.
    Link {
        broad: bool,
        ends: [Spot; 2],
    },
    /// Schedule value of a single fiber.
    Fiber {
        at: Spot,
    },
}

fn unknown(ctx: &StructureContext) -> DischargeError {
    DischargeError::UnknownCase(format!("{ctx:?}"))
}

/// Lower bound pair from the case analysis of the given structure.
pub fn structure_score(ctx: &StructureContext) -> Result<ScorePair, DischargeError> {
    use StructureContext as S;
    Ok(match ctx {
        S::RedIsland { u, far } => red_island(*u, *far),
        S::GreenIsland { w } => green_island(*w),
        S::GreenIsthmus { ends } => green_isthmus(*ends),
        S::RedIsthmus | S::BlackDetour | S::SpecialBlack => ScorePair::new(0, 0),
        S::SpecialRed { u } => {
            let flip = u.is_b();
            ScorePair::new(2, if u.dotted { 0 } else { -1 }).swapped_if(flip)
        }
        S::Isolated3Star { v } => isolated_three_star(*v),
        S::Isolated2Star { u } => isolated_two_star(*u),
        S::Adjacent2Stars { w } => adjacent_two_stars(*w),
        S::CommonNeighbor2Stars { w } => common_neighbor(*w),
        S::TwoOneTwo { w } => two_one_two(*w).ok_or_else(|| unknown(ctx))?,
        S::TwoOneNotTwo { w } => two_one_not_two(*w),
        S::Link { broad, ends } => ScorePair::flat(link_schedule(*broad, spot_link_state(ends[0], ends[1]))),
        S::Fiber { at } => ScorePair::flat(fiber_schedule(at.dotted)),
    })
}

fn spot_link_state(p: Spot, q: Spot) -> LinkState {
    match (p.dotted, q.dotted) {
        (true, true) => LinkState::BothDotted,
        (true, false) | (false, true) => LinkState::OneDotted,
        _ if p.side != q.side => LinkState::Well,
        _ => LinkState::Bad,
    }
}

/// Mirrors all spots when `spots[i]` is in B, so that it lands in A.
fn put_in_a<const N: usize>(spots: &mut [Spot; N], i: usize) -> bool {
    let flip = spots[i].is_b();
    if flip {
        for s in spots.iter_mut() {
            *s = s.mirrored();
        }
    }
    flip
}

fn red_island(mut u: Spot, mut far: [Spot; 2]) -> ScorePair {
    let flip = u.is_b();
    if flip {
        u = u.mirrored();
        far = far.map(Spot::mirrored);
    }
    let pair = if far.iter().any(|s| s.is_b()) || u.dotted {
        ScorePair::new(2, 0)
    } else {
        ScorePair::new(2, -1)
    };
    pair.swapped_if(flip)
}

fn green_island(mut w: [Spot; 4]) -> ScorePair {
    let Some(first) = w.iter().position(|s| s.dotted) else {
        return ScorePair::new(1, 1);
    };
    if first >= 2 {
        w = [w[2], w[3], w[0], w[1]];
    }
    if !w[0].dotted {
        w.swap(0, 1);
    }
    let flip = put_in_a(&mut w, 0);
    let (v3, v4) = (w[2], w[3]);
    let pair = if (v3.dotted && v3.is_a()) || (v4.dotted && v4.is_a()) {
        ScorePair::new(0, 0)
    } else if v3.is_b() || v4.is_b() {
        ScorePair::new(0, 2)
    } else {
        ScorePair::new(1, -1)
    };
    pair.swapped_if(flip)
}

fn green_isthmus(mut ends: [Spot; 2]) -> ScorePair {
    if ends[0].side != ends[1].side {
        return if ends.iter().any(|s| s.dotted) {
            ScorePair::new(0, 0)
        } else {
            ScorePair::new(1, 1)
        };
    }
    let flip = put_in_a(&mut ends, 0);
    ScorePair::new(1, -1).swapped_if(flip)
}

fn isolated_three_star(mut v: [Spot; 3]) -> ScorePair {
    let link_dotted = v[0].dotted || v[1].dotted;
    if !link_dotted && v[0].side != v[1].side {
        let flip = put_in_a(&mut v, 2);
        let pair = if v[2].dotted {
            ScorePair::new(5, 2)
        } else {
            ScorePair::new(5, 6)
        };
        return pair.swapped_if(flip);
    }
    if link_dotted {
        if !v[0].dotted {
            v.swap(0, 1);
        }
        let flip = put_in_a(&mut v, 0);
        let dotted_b = |s: Spot| s.dotted && s.is_b();
        let pair = if dotted_b(v[1]) && dotted_b(v[2]) {
            ScorePair::new(0, 1)
        } else {
            ScorePair::new(1, 0)
        };
        return pair.swapped_if(flip);
    }
    // badly colored link
    let flip = put_in_a(&mut v, 0);
    let pair = match (v[2].dotted, v[2].side) {
        (false, Side::A) => ScorePair::new(4, -5),
        (false, Side::B) => ScorePair::new(4, 6),
        (true, Side::B) => ScorePair::new(1, 6),
        (true, Side::A) => ScorePair::new(4, -2),
    };
    pair.swapped_if(flip)
}

fn isolated_two_star(mut u: [Spot; 2]) -> ScorePair {
    let flip = put_in_a(&mut u, 0);
    let pair = if u[1].is_a() {
        ScorePair::new(3, if u[0].dotted || u[1].dotted { 0 } else { -2 })
    } else {
        ScorePair::new(if u[1].dotted { 0 } else { 4 }, if u[0].dotted { 0 } else { 4 })
    };
    pair.swapped_if(flip)
}

fn adjacent_two_stars(mut w: [Spot; 4]) -> ScorePair {
    let u_dotted = w[0].dotted || w[1].dotted;
    let v_dotted = w[2].dotted || w[3].dotted;
    let u_well = w[0].side != w[1].side;
    let v_well = w[2].side != w[3].side;
    match (u_dotted, v_dotted) {
        (false, false) => match (u_well, v_well) {
            (true, true) => ScorePair::new(10, 10),
            (false, false) => {
                let flip = put_in_a(&mut w, 0);
                let pair = if w[2].is_a() {
                    ScorePair::new(8, 0)
                } else {
                    ScorePair::new(-2, -2)
                };
                pair.swapped_if(flip)
            }
            _ => {
                if u_well {
                    w = [w[2], w[3], w[0], w[1]];
                }
                let flip = put_in_a(&mut w, 0);
                ScorePair::new(9, -1).swapped_if(flip)
            }
        },
        (true, true) => {
            let in_a = w.iter().filter(|s| s.is_a()).count();
            if in_a != 2 {
                let flip = in_a < 2;
                if flip {
                    w = w.map(Spot::mirrored);
                }
                let pair = match w.iter().find(|s| s.is_b()) {
                    None => ScorePair::new(8, 0),
                    Some(odd) => ScorePair::new(if odd.dotted { 5 } else { 8 }, 0),
                };
                pair.swapped_if(flip)
            } else if u_well {
                let dotted_on = |side| w.iter().filter(|s| s.dotted && s.side == side).count() as i64;
                ScorePair::new(8 - 3 * dotted_on(Side::B), 8 - 3 * dotted_on(Side::A))
            } else {
                let flip = put_in_a(&mut w, 0);
                let cost = |x: Spot, y: Spot| if x.dotted && y.dotted { 1 } else { 3 };
                ScorePair::new(4 - cost(w[2], w[3]), 4 - cost(w[0], w[1])).swapped_if(flip)
            }
        }
        _ => {
            // exactly one link dotted; move it to the first star
            if !u_dotted {
                w = [w[2], w[3], w[0], w[1]];
            }
            let both = w[0].dotted && w[1].dotted;
            let other_well = w[2].side != w[3].side;
            if other_well {
                if !w[0].dotted {
                    w.swap(0, 1);
                }
                let flip = put_in_a(&mut w, 0);
                let pair = match (both, w[1].side) {
                    (false, Side::A) => ScorePair::new(9, 2),
                    (false, Side::B) => ScorePair::new(10, 6),
                    (true, Side::A) => ScorePair::new(9, 4),
                    (true, Side::B) => ScorePair::new(6, 6),
                };
                pair.swapped_if(flip)
            } else {
                let flip = put_in_a(&mut w, 2);
                let some_a = w[0].is_a() || w[1].is_a();
                let pair = match (some_a, both) {
                    (true, _) => ScorePair::new(5, -1),
                    (false, false) => ScorePair::new(1, -2),
                    (false, true) => ScorePair::new(3, -2),
                };
                pair.swapped_if(flip)
            }
        }
    }
}

fn common_neighbor(mut w: [Spot; 4]) -> ScorePair {
    let count_a = w.iter().filter(|s| s.is_a()).count() as i64;
    if !w.iter().any(|s| s.dotted) {
        return ScorePair::new(4 - count_a, count_a);
    }
    let swap_stars = |w: [Spot; 4]| [w[2], w[3], w[0], w[1]];
    let u_same = w[0].side == w[1].side;
    let v_same = w[2].side == w[3].side;
    if count_a == 4 || count_a == 0 {
        if !(w[0].dotted || w[1].dotted) {
            w = swap_stars(w);
        }
        if !w[0].dotted {
            w.swap(0, 1);
        }
        let flip = put_in_a(&mut w, 0);
        let b = if w[2].dotted || w[3].dotted {
            0
        } else if w[1].dotted {
            -2
        } else {
            0
        };
        return ScorePair::new(4, b).swapped_if(flip);
    }
    if count_a == 2 && u_same && v_same {
        if !(w[0].dotted || w[1].dotted) {
            w = swap_stars(w);
        }
        let flip = put_in_a(&mut w, 0);
        let a = if w[2].dotted || w[3].dotted { 3 } else { 2 };
        return ScorePair::new(a, 3).swapped_if(flip);
    }
    if count_a == 2 {
        return ScorePair::new(0, 0);
    }
    // three on one side
    let flip = count_a == 1;
    if flip {
        w = w.map(Spot::mirrored);
    }
    let odd = w.iter().position(|s| s.is_b()).expect("one spot in B");
    if odd < 2 {
        w = swap_stars(w);
    }
    if w[2].is_b() {
        w.swap(2, 3);
    }
    let pair = if w[0].dotted || w[1].dotted {
        ScorePair::new(if w[3].dotted { 1 } else { 5 }, 0)
    } else if w[2].dotted {
        ScorePair::new(3, -1)
    } else {
        // only the odd vertex is dotted
        ScorePair::new(1, -1)
    };
    pair.swapped_if(flip)
}

fn two_one_two(mut w: [Spot; 5]) -> Option<ScorePair> {
    let u_dots = [w[0], w[1]].iter().filter(|s| s.dotted).count();
    let w_dots = [w[3], w[4]].iter().filter(|s| s.dotted).count();
    if u_dots + w_dots <= 1 {
        // delete all three centers and dominate with v
        let gain = |side: Side| -> i64 {
            let outer: i64 = [w[0], w[1], w[3], w[4]]
                .iter()
                .filter(|s| s.side != side)
                .map(|s| if s.dotted { -3 } else { 1 })
                .sum();
            outer + i64::from(w[2].side != side)
        };
        return Some(ScorePair::new(gain(Side::A), gain(Side::B)));
    }
    if u_dots > 0 && w_dots > 0 {
        return Some(ScorePair::new(0, 0));
    }
    if u_dots == 0 {
        w = [w[3], w[4], w[2], w[0], w[1]];
    }
    if w[0].side != w[1].side {
        return None;
    }
    let flip = put_in_a(&mut w, 0);
    let b = [w[2], w[3], w[4]].iter().filter(|s| s.is_b()).count() as i64;
    Some(ScorePair::new(b, -1 - b).swapped_if(flip))
}

fn two_one_not_two(mut w: [Spot; 3]) -> ScorePair {
    if w[0].dotted || w[1].dotted {
        return ScorePair::new(0, 0);
    }
    if w[0].side == w[1].side {
        let flip = put_in_a(&mut w, 0);
        let cost = match (w[2].side, w[2].dotted) {
            (Side::A, _) => 0,
            (Side::B, true) => 1,
            (Side::B, false) => 3,
        };
        return ScorePair::new(4 - cost, -2).swapped_if(flip);
    }
    let flip = w[2].is_a();
    if flip {
        w = w.map(Spot::mirrored);
    }
    let a = if w[2].dotted { 4 } else { 2 };
    ScorePair::new(a, 6).swapped_if(flip)
}

/// Context of a star group under a coloring.
pub fn group_context(group: &StarGroup, c: &CycleColoring) -> StructureContext {
    let s: Vec<Spot> = group.anchors.iter().map(|&p| c.spot(p)).collect();
    match group.origin {
        ArtifactOrigin::Isolated3Star => StructureContext::Isolated3Star { v: [s[0], s[1], s[2]] },
        ArtifactOrigin::Adjacent2Stars => StructureContext::Adjacent2Stars {
            w: [s[0], s[1], s[2], s[3]],
        },
        ArtifactOrigin::TwoOneTwo => StructureContext::TwoOneTwo {
            w: [s[0], s[1], s[2], s[3], s[4]],
        },
        ArtifactOrigin::TwoOneNotTwo => StructureContext::TwoOneNotTwo { w: [s[0], s[1], s[2]] },
    }
}

/// Scheduled average of the artifacts of a group, from its context.
pub fn group_schedule(ctx: &StructureContext) -> Option<Rational12> {
    use StructureContext as S;
    let link = |broad, p: Spot, q: Spot| link_schedule(broad, spot_link_state(p, q));
    let fiber = |s: Spot| fiber_schedule(s.dotted);
    Some(match ctx {
        S::Isolated3Star { v } => link(false, v[0], v[1]) + fiber(v[2]),
        S::Adjacent2Stars { w } => link(true, w[0], w[1]) + link(true, w[2], w[3]),
        S::TwoOneTwo { w } => [w[0], w[1], w[3], w[4]].into_iter().map(fiber).sum(),
        S::TwoOneNotTwo { w } => link(false, w[0], w[1]),
        _ => return None,
    })
}
