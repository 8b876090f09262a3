//! Alternating green-black cycles: the amber/blue coloring of their green
//! edges, the link and fiber artifacts contributed by nearby black stars,
//! the cut rules that recolor a cycle, and the final choice of a side.
//!
//! A cycle with `k` green edges has positions `0..2k`: position `2j` is the
//! lower end and `2j + 1` the upper end of green `j`, and black `j` joins
//! positions `2j + 1` and `2j + 2 mod 2k`.

pub mod attach;
pub mod fixpoint;
pub mod generate;
pub mod rules;
pub mod structures;

pub use attach::{attach_artifacts, find_cycles};
pub use fixpoint::{apply_rules_fixpoint, choose_side, FixpointOutcome, LogEntry, Measure, SideChoice};
pub use rules::{cut_stats, rule_lhs, Census, CutStats, RuleId, RuleVerdict, TieBreak};
pub use structures::{structure_score, ScorePair, Spot, StructureContext};

use crate::rational::Rational12;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DischargeError {
    #[error("no score case covers {0}")]
    UnknownCase(String),
    #[error("cut ends {0} and {1} are not two distinct black edges of a cycle with {2} greens")]
    InvalidCutEnds(usize, usize, usize),
    #[error("rule {rule:?} on cut {cut:?} did not decrease the measure")]
    NonTermination { rule: RuleId, cut: (usize, usize) },
    #[error("no fixpoint after {0} rule applications")]
    StepLimit(usize),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GreenColor {
    Amber,
    Blue,
}

impl GreenColor {
    pub fn flipped(self) -> Self {
        match self {
            GreenColor::Amber => GreenColor::Blue,
            GreenColor::Blue => GreenColor::Amber,
        }
    }
}

/// The two candidate dominating sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Self {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

pub fn is_lower(pos: usize) -> bool {
    pos.is_multiple_of(2)
}

/// Green edge holding a position.
pub fn green_of(pos: usize) -> usize {
    pos / 2
}

/// Positions joined by black edge `j` on a cycle with `k` greens.
pub fn black_ends(j: usize, k: usize) -> (usize, usize) {
    (2 * j + 1, (2 * j + 2) % (2 * k))
}

/// Black edge holding a position.
pub fn black_of(pos: usize, k: usize) -> usize {
    if is_lower(pos) {
        (green_of(pos) + k - 1) % k
    } else {
        green_of(pos)
    }
}

/// Sides, dotted positions and color changes induced by a green coloring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleColoring {
    pub greens: Vec<GreenColor>,
    pub side: Vec<Side>,
    pub dotted: Vec<bool>,
    /// Black edges whose two greens differ in color.
    pub color_changes: Vec<usize>,
}

impl CycleColoring {
    pub fn k(&self) -> usize {
        self.greens.len()
    }

    pub fn is_color_change(&self, black: usize) -> bool {
        let k = self.k();
        self.greens[black] != self.greens[(black + 1) % k]
    }

    pub fn set(&self, side: Side) -> Vec<usize> {
        (0..self.side.len()).filter(|&p| self.side[p] == side).collect()
    }

    pub fn dotted_on(&self, side: Side) -> usize {
        (0..self.side.len())
            .filter(|&p| self.dotted[p] && self.side[p] == side)
            .count()
    }

    pub fn spot(&self, pos: usize) -> Spot {
        Spot {
            side: self.side[pos],
            dotted: self.dotted[pos],
        }
    }
}

/// Lower ends of amber greens and upper ends of blue greens form side A.
pub fn derive_sets(greens: &[GreenColor]) -> CycleColoring {
    let k = greens.len();
    let side = (0..2 * k)
        .map(|p| match (is_lower(p), greens[green_of(p)]) {
            (true, GreenColor::Amber) | (false, GreenColor::Blue) => Side::A,
            _ => Side::B,
        })
        .collect();
    let color_changes: Vec<usize> = (0..k).filter(|&j| greens[j] != greens[(j + 1) % k]).collect();
    let mut dotted = vec![false; 2 * k];
    for &j in &color_changes {
        let (p, q) = black_ends(j, k);
        dotted[p] = true;
        dotted[q] = true;
    }
    CycleColoring {
        greens: greens.to_vec(),
        side,
        dotted,
        color_changes,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ArtifactKind {
    NarrowLink,
    BroadLink,
    Fiber,
}

/// Black-star configuration an artifact comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ArtifactOrigin {
    /// A star center with three neighbors `[v1, v2, v3]` on the cycle.
    Isolated3Star,
    /// Adjacent centers with cycle neighbors `[u1, u2]` and `[v1, v2]`.
    Adjacent2Stars,
    /// Centers `u`, `v`, `w` in a row with cycle neighbors
    /// `[u1, u2, v1, w1, w2]`.
    TwoOneTwo,
    /// A two-star center adjacent to a one-star center whose third neighbor
    /// is no two-star center; cycle neighbors `[u1, u2, v1]`.
    TwoOneNotTwo,
}

impl ArtifactOrigin {
    pub const ALL: [ArtifactOrigin; 4] = [
        ArtifactOrigin::Isolated3Star,
        ArtifactOrigin::Adjacent2Stars,
        ArtifactOrigin::TwoOneTwo,
        ArtifactOrigin::TwoOneNotTwo,
    ];

    pub fn anchor_count(self) -> usize {
        match self {
            ArtifactOrigin::Isolated3Star | ArtifactOrigin::TwoOneNotTwo => 3,
            ArtifactOrigin::Adjacent2Stars => 4,
            ArtifactOrigin::TwoOneTwo => 5,
        }
    }

    /// Length in the graph of the shortest route between two anchors
    /// through the stars, by anchor index.
    pub fn anchor_distance(self, i: usize, j: usize) -> usize {
        let star = |x: usize| -> usize {
            match self {
                ArtifactOrigin::Isolated3Star => 0,
                ArtifactOrigin::Adjacent2Stars => x / 2,
                ArtifactOrigin::TwoOneTwo => [0, 0, 1, 2, 2][x],
                ArtifactOrigin::TwoOneNotTwo => [0, 0, 1][x],
            }
        };
        let (a, b) = (star(i), star(j));
        2 + a.abs_diff(b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Artifact {
    pub kind: ArtifactKind,
    /// Two positions for a link, one for a fiber.
    pub ends: Vec<usize>,
    pub origin: ArtifactOrigin,
    /// Index of the star group the artifact belongs to.
    pub group: usize,
}

impl Artifact {
    pub fn is_link(&self) -> bool {
        self.kind != ArtifactKind::Fiber
    }

    pub fn is_broad(&self) -> bool {
        self.kind == ArtifactKind::BroadLink
    }
}

/// Cycle positions adjacent to the star centers of one configuration, in
/// the order documented on [`ArtifactOrigin`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarGroup {
    pub origin: ArtifactOrigin,
    pub anchors: Vec<usize>,
}

impl StarGroup {
    pub fn artifacts(&self, group: usize) -> Vec<Artifact> {
        let a = &self.anchors;
        let make = |kind, ends: Vec<usize>| Artifact {
            kind,
            ends,
            origin: self.origin,
            group,
        };
        match self.origin {
            ArtifactOrigin::Isolated3Star => vec![
                make(ArtifactKind::NarrowLink, vec![a[0], a[1]]),
                make(ArtifactKind::Fiber, vec![a[2]]),
            ],
            ArtifactOrigin::Adjacent2Stars => vec![
                make(ArtifactKind::BroadLink, vec![a[0], a[1]]),
                make(ArtifactKind::BroadLink, vec![a[2], a[3]]),
            ],
            ArtifactOrigin::TwoOneTwo => [a[0], a[1], a[3], a[4]]
                .into_iter()
                .map(|x| make(ArtifactKind::Fiber, vec![x]))
                .collect(),
            ArtifactOrigin::TwoOneNotTwo => vec![make(ArtifactKind::NarrowLink, vec![a[0], a[1]])],
        }
    }
}

/// A cycle with `k` greens and the star groups around it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleConfig {
    pub k: usize,
    pub groups: Vec<StarGroup>,
}

impl CycleConfig {
    pub fn artifacts(&self) -> Vec<Artifact> {
        self.groups
            .iter()
            .enumerate()
            .flat_map(|(i, g)| g.artifacts(i))
            .collect()
    }

    /// Checks anchor counts, ranges and that no position serves two anchors.
    pub fn validate(&self) -> Result<(), DischargeError> {
        if self.k < 2 {
            return Err(DischargeError::InvalidConfig(format!("cycle with {} greens", self.k)));
        }
        let mut used = vec![false; 2 * self.k];
        for g in &self.groups {
            if g.anchors.len() != g.origin.anchor_count() {
                return Err(DischargeError::InvalidConfig(format!(
                    "{:?} needs {} anchors",
                    g.origin,
                    g.origin.anchor_count()
                )));
            }
            for &p in &g.anchors {
                if p >= 2 * self.k || std::mem::replace(&mut used[p], true) {
                    return Err(DischargeError::InvalidConfig(format!(
                        "anchor {p} out of range or reused"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Coloring state of a link, read from its two extremities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LinkState {
    Well,
    Bad,
    OneDotted,
    BothDotted,
}

pub fn link_state(c: &CycleColoring, p: usize, q: usize) -> LinkState {
    match (c.dotted[p], c.dotted[q]) {
        (true, true) => LinkState::BothDotted,
        (true, false) | (false, true) => LinkState::OneDotted,
        (false, false) if c.side[p] != c.side[q] => LinkState::Well,
        _ => LinkState::Bad,
    }
}

/// Average score credited to a link in a given state.
pub fn link_schedule(broad: bool, state: LinkState) -> Rational12 {
    match (broad, state) {
        (true, LinkState::Well) => Rational12::int(5),
        (true, LinkState::Bad) => Rational12::int(-1),
        (true, LinkState::OneDotted) => Rational12::frac(1, 2),
        (true, LinkState::BothDotted) => Rational12::int(1),
        (false, LinkState::Well) => Rational12::int(4),
        (false, LinkState::Bad) => Rational12::frac(-1, 2),
        (false, _) => Rational12::ZERO,
    }
}

/// Average score credited to a fiber.
pub fn fiber_schedule(dotted: bool) -> Rational12 {
    if dotted {
        Rational12::frac(-1, 2)
    } else {
        Rational12::ZERO
    }
}

/// Cost of one color change on either side.
pub const COLOR_CHANGE_COST: Rational12 = Rational12::int(4);

/// Scheduled average score of all artifacts minus the color change costs.
pub fn schedule_total(artifacts: &[Artifact], c: &CycleColoring) -> Rational12 {
    let mut total = Rational12::ZERO;
    for a in artifacts {
        total += match a.kind {
            ArtifactKind::Fiber => fiber_schedule(c.dotted[a.ends[0]]),
            _ => link_schedule(a.is_broad(), link_state(c, a.ends[0], a.ends[1])),
        };
    }
    total - COLOR_CHANGE_COST * c.color_changes.len() as i64
}

pub fn dotted_fibers(artifacts: &[Artifact], c: &CycleColoring) -> usize {
    artifacts
        .iter()
        .filter(|a| a.kind == ArtifactKind::Fiber && c.dotted[a.ends[0]])
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use GreenColor::{Amber, Blue};

    #[test]
    fn all_amber_has_no_color_change() {
        let c = derive_sets(&[Amber; 5]);
        assert!(c.color_changes.is_empty());
        assert!(c.dotted.iter().all(|d| !d));
        assert_eq!(c.set(Side::A), vec![0, 2, 4, 6, 8]);
    }

    #[test]
    fn one_blue_green_makes_two_changes() {
        let c = derive_sets(&[Amber, Blue, Amber, Amber]);
        assert_eq!(c.color_changes, vec![0, 1]);
        assert_eq!(c.dotted_on(Side::A), 2);
        assert_eq!(c.dotted_on(Side::B), 2);
        // black 0 joins an amber upper end and a blue lower end, both in B
        assert_eq!((c.side[1], c.side[2]), (Side::B, Side::B));
        assert_eq!((c.side[3], c.side[4]), (Side::A, Side::A));
    }

    #[test]
    fn alternating_colors_change_everywhere() {
        let c = derive_sets(&[Amber, Blue, Amber, Blue, Amber, Blue]);
        assert_eq!(c.color_changes.len(), 6);
        assert!(c.dotted.iter().all(|&d| d));
    }

    #[test]
    fn every_green_has_one_end_per_side() {
        let c = derive_sets(&[Blue, Amber, Amber, Blue, Blue]);
        for j in 0..5 {
            assert_ne!(c.side[2 * j], c.side[2 * j + 1]);
        }
    }

    #[test]
    fn black_positions_round_trip() {
        let k = 4;
        for j in 0..k {
            let (p, q) = black_ends(j, k);
            assert_eq!(black_of(p, k), j);
            assert_eq!(black_of(q, k), j);
        }
    }

    #[test]
    fn schedules() {
        assert_eq!(link_schedule(true, LinkState::Well), Rational12::int(5));
        assert_eq!(link_schedule(false, LinkState::Bad), Rational12::frac(-1, 2));
        assert_eq!(link_schedule(false, LinkState::BothDotted), Rational12::ZERO);
        assert_eq!(fiber_schedule(true), Rational12::frac(-1, 2));
    }

    #[test]
    fn group_artifacts() {
        let g = StarGroup {
            origin: ArtifactOrigin::Isolated3Star,
            anchors: vec![0, 5, 9],
        };
        let arts = g.artifacts(7);
        assert_eq!(arts.len(), 2);
        assert_eq!(arts[0].kind, ArtifactKind::NarrowLink);
        assert_eq!(arts[1].ends, vec![9]);
        assert!(arts.iter().all(|a| a.group == 7));
        let g = StarGroup {
            origin: ArtifactOrigin::TwoOneTwo,
            anchors: vec![0, 4, 8, 12, 16],
        };
        let fibers: Vec<usize> = g.artifacts(0).iter().map(|a| a.ends[0]).collect();
        assert_eq!(fibers, vec![0, 4, 12, 16]);
        assert_eq!(ArtifactOrigin::TwoOneTwo.anchor_distance(0, 4), 4);
        assert_eq!(ArtifactOrigin::Adjacent2Stars.anchor_distance(1, 2), 3);
    }

    #[test]
    fn validation_rejects_shared_positions() {
        let cfg = CycleConfig {
            k: 6,
            groups: vec![
                StarGroup {
                    origin: ArtifactOrigin::TwoOneNotTwo,
                    anchors: vec![0, 4, 8],
                },
                StarGroup {
                    origin: ArtifactOrigin::TwoOneNotTwo,
                    anchors: vec![8, 1, 5],
                },
            ],
        };
        assert!(cfg.validate().is_err());
    }
}
