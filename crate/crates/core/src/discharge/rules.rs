//! Census of a cut and the three recoloring rules.
//!
//! A cut from black `j` to black `j'` (with `j < j'`) switches the colors of
//! greens `j + 1 ..= j'`. Its ends hit the four positions joined by the two
//! end blacks. A hit at an end that is not a color change makes the
//! position dotted; a hit at a color change undots it.
//!
//! Every link extremity is counted in at most one census field, so the
//! full rule forms equal the exact change of the scheduled total.

use super::{derive_sets, green_of, Artifact, ArtifactKind, CycleColoring, DischargeError, GreenColor};
use crate::rational::Rational12;
use serde::{Deserialize, Serialize};

/// A count split between broad and narrow links.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Census {
    pub broad: u32,
    pub narrow: u32,
}

impl Census {
    pub const fn broad(n: u32) -> Self {
        Census { broad: n, narrow: 0 }
    }

    pub const fn narrow(n: u32) -> Self {
        Census { broad: 0, narrow: n }
    }

    pub const fn total(self) -> u32 {
        self.broad + self.narrow
    }

    fn bump(&mut self, broad: bool) {
        if broad {
            self.broad += 1;
        } else {
            self.narrow += 1;
        }
    }
}

/// Link extremities and fibers affected by a cut.
///
/// Prefixes `w`/`b` mean well or badly colored, `c` cut, `h` hit; a trailing
/// `d` marks hits by a color change, which undot the position. `oh` counts
/// hits on extremities whose other end is dotted, `ohd` the same for hits
/// by a color change.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CutStats {
    pub wc: Census,
    pub bc: Census,
    pub wch: Census,
    pub bch: Census,
    pub wh: Census,
    pub bh: Census,
    pub oh: Census,
    pub whd: Census,
    pub bchd: Census,
    pub bhd: Census,
    pub wchd: Census,
    pub ohd: Census,
    /// Fibers hit at an end that is not a color change.
    pub f: u32,
    /// Fibers hit by a color change.
    pub fd: u32,
    /// Color change ends hitting a broad link extremity.
    pub cc_b: u32,
    /// Number of cut ends that are color changes.
    pub cc_ends: u32,
}

/// Cut end blacks, validated.
pub fn check_cut(k: usize, cut: (usize, usize)) -> Result<(usize, usize), DischargeError> {
    let (j, jj) = cut;
    if j < jj && jj < k {
        Ok(cut)
    } else {
        Err(DischargeError::InvalidCutEnds(j, jj, k))
    }
}

fn inside(pos: usize, cut: (usize, usize)) -> bool {
    let g = green_of(pos);
    cut.0 < g && g <= cut.1
}

/// Coloring after switching the greens inside the cut.
pub fn switch_cut(c: &CycleColoring, cut: (usize, usize)) -> Result<CycleColoring, DischargeError> {
    let (j, jj) = check_cut(c.k(), cut)?;
    let greens: Vec<GreenColor> = c
        .greens
        .iter()
        .enumerate()
        .map(|(g, &col)| if j < g && g <= jj { col.flipped() } else { col })
        .collect();
    Ok(derive_sets(&greens))
}

pub fn cut_stats(artifacts: &[Artifact], c: &CycleColoring, cut: (usize, usize)) -> Result<CutStats, DischargeError> {
    let k = c.k();
    let (j, jj) = check_cut(k, cut)?;
    let ends = [j, jj];
    let cc = [c.is_color_change(j), c.is_color_change(jj)];
    // hit position -> index of the hitting end
    let hit = |p: usize| -> Option<usize> { ends.iter().position(|&e| p == 2 * e + 1 || p == (2 * e + 2) % (2 * k)) };
    let mut s = CutStats {
        cc_ends: cc.iter().filter(|&&x| x).count() as u32,
        ..CutStats::default()
    };
    let mut cc_hits_broad = [false; 2];
    for a in artifacts {
        if a.kind == ArtifactKind::Fiber {
            let p = a.ends[0];
            if let Some(e) = hit(p) {
                if cc[e] {
                    s.fd += 1;
                } else {
                    s.f += 1;
                }
            }
            continue;
        }
        let broad = a.is_broad();
        let (p, q) = (a.ends[0], a.ends[1]);
        let is_cut = inside(p, cut) != inside(q, cut);
        let well = c.side[p] != c.side[q];
        let (hp, hq) = (hit(p), hit(q));
        for e in [hp, hq].into_iter().flatten() {
            if cc[e] && broad {
                cc_hits_broad[e] = true;
            }
        }
        match (hp, hq) {
            (None, None) => {
                if c.dotted[p] || c.dotted[q] || !is_cut {
                    continue;
                }
                if well {
                    s.wc.bump(broad);
                } else {
                    s.bc.bump(broad);
                }
            }
            (Some(e), None) | (None, Some(e)) => {
                let other = if hp.is_some() { q } else { p };
                if cc[e] {
                    hit_by_change(&mut s, broad, c.dotted[other], well, is_cut);
                } else {
                    hit_plain(&mut s, broad, c.dotted[other], well, is_cut);
                }
            }
            (Some(ep), Some(eq)) => match (cc[ep], cc[eq]) {
                (false, false) => {
                    hit_plain(&mut s, broad, false, well, is_cut);
                    s.oh.bump(broad);
                }
                (true, true) => {
                    s.ohd.bump(broad);
                    hit_by_change(&mut s, broad, false, well, is_cut);
                }
                _ => {
                    s.ohd.bump(broad);
                    s.oh.bump(broad);
                }
            },
        }
    }
    s.cc_b = cc_hits_broad.iter().filter(|&&x| x).count() as u32;
    Ok(s)
}

/// An undotted extremity becomes dotted.
fn hit_plain(s: &mut CutStats, broad: bool, other_dotted: bool, well: bool, is_cut: bool) {
    let field = match (other_dotted, well, is_cut) {
        (true, _, _) => &mut s.oh,
        (false, true, true) => &mut s.wch,
        (false, false, true) => &mut s.bch,
        (false, true, false) => &mut s.wh,
        (false, false, false) => &mut s.bh,
    };
    field.bump(broad);
}

/// A dotted extremity is undotted.
fn hit_by_change(s: &mut CutStats, broad: bool, other_dotted: bool, well: bool, is_cut: bool) {
    let field = match (other_dotted, well, is_cut) {
        (true, _, _) => &mut s.ohd,
        (false, true, false) => &mut s.whd,
        (false, false, true) => &mut s.bchd,
        (false, false, false) => &mut s.bhd,
        (false, true, true) => &mut s.wchd,
    };
    field.bump(broad);
}

/// Rule forms: full, simplified (no broad/narrow split) and reformulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RuleId {
    R1,
    R2,
    R3,
    R1s,
    R2s,
    R3s,
    R2ref,
    R3ref,
    /// Reformulated form with the simplified coefficients.
    R2refs,
    /// Reformulated form with the simplified coefficients.
    R3refs,
}

impl RuleId {
    pub const ALL: [RuleId; 10] = [
        RuleId::R1,
        RuleId::R2,
        RuleId::R3,
        RuleId::R1s,
        RuleId::R2s,
        RuleId::R3s,
        RuleId::R2ref,
        RuleId::R3ref,
        RuleId::R2refs,
        RuleId::R3refs,
    ];

    /// Number of cut ends that must be color changes.
    pub fn color_change_ends(self) -> u32 {
        match self {
            RuleId::R1 | RuleId::R1s => 0,
            RuleId::R2 | RuleId::R2s | RuleId::R2ref | RuleId::R2refs => 2,
            RuleId::R3 | RuleId::R3s | RuleId::R3ref | RuleId::R3refs => 1,
        }
    }

    pub fn threshold(self) -> Rational12 {
        match self.color_change_ends() {
            0 => Rational12::int(8),
            2 if matches!(self, RuleId::R2ref | RuleId::R2refs) => Rational12::int(-7),
            2 => Rational12::int(-8),
            _ if matches!(self, RuleId::R3ref | RuleId::R3refs) => Rational12::frac(1, 2),
            _ => Rational12::ZERO,
        }
    }

    /// Whether reaching the threshold exactly is enough.
    pub fn inclusive(self) -> bool {
        self.color_change_ends() == 2
    }

    /// Change of the scheduled total when a full form with this many color
    /// change ends is applied, given its left-hand side.
    pub fn schedule_delta(cc_ends: u32, lhs: Rational12) -> Rational12 {
        lhs + super::COLOR_CHANGE_COST * (cc_ends as i64 - 1) * 2
    }
}

/// Why an applicable rule makes progress.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TieBreak {
    Score,
    ColorChanges,
    DottedFibers,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleVerdict {
    pub rule: RuleId,
    pub lhs: Rational12,
    pub threshold: Rational12,
    pub applies: bool,
    pub tiebreak: TieBreak,
}

/// Left-hand side of a rule, in halves.
fn lhs_halves(rule: RuleId, s: &CutStats) -> i64 {
    let b = |c: Census| i64::from(c.broad);
    let n = |c: Census| i64::from(c.narrow);
    let t = |c: Census| i64::from(c.total());
    let (f, fd, cc_b) = (i64::from(s.f), i64::from(s.fd), i64::from(s.cc_b));
    let cut_full = 12 * (b(s.bc) - b(s.wc)) + 9 * (n(s.bc) - n(s.wc));
    let undot_full = 9 * (b(s.whd) + b(s.bchd)) + 8 * (n(s.whd) + n(s.bchd))
        - 3 * (b(s.bhd) + b(s.wchd))
        - (n(s.bhd) + n(s.wchd))
        - b(s.ohd);
    let dot_full = -9 * (b(s.wch) + b(s.wh)) - 8 * (n(s.wh) + n(s.wch))
        + 3 * (b(s.bch) + b(s.bh))
        + (n(s.bch) + n(s.bh))
        + b(s.oh);
    let cut_simple = -12 * t(s.wc) + 9 * t(s.bc);
    let dot_simple = -9 * (t(s.wch) + t(s.wh)) + t(s.bch) + t(s.bh);
    let undot_simple = 8 * (t(s.whd) + t(s.bchd)) - 3 * (t(s.bhd) + t(s.wchd));
    match rule {
        RuleId::R1 => cut_full + dot_full - f,
        RuleId::R1s => cut_simple + dot_simple - f,
        RuleId::R2 => cut_full + undot_full + fd,
        RuleId::R2s => cut_simple + undot_simple + fd - t(s.ohd),
        RuleId::R3 => cut_full + dot_full + undot_full + fd - f,
        RuleId::R3s => cut_simple + dot_simple + undot_simple + fd - f - b(s.ohd),
        RuleId::R2ref => cut_full - 2 * cc_b,
        RuleId::R2refs => cut_simple - 2 * cc_b,
        RuleId::R3ref => cut_full + dot_full - f - 2 * cc_b,
        RuleId::R3refs => cut_simple + dot_simple - f - 2 * cc_b,
    }
}

/// Evaluates a rule form on a census.
///
/// Forms with one color change end also apply at exactly zero when the
/// switch leaves fewer dotted fibers behind than it creates, i.e. when
/// `fd > f`; this keeps every application a strict improvement.
pub fn rule_lhs(rule: RuleId, stats: &CutStats) -> RuleVerdict {
    let lhs = Rational12::frac(lhs_halves(rule, stats), 2);
    let threshold = rule.threshold();
    let tiebreak = if lhs > threshold {
        TieBreak::Score
    } else if lhs == threshold && rule.inclusive() {
        TieBreak::ColorChanges
    } else if lhs == threshold && matches!(rule, RuleId::R3 | RuleId::R3s) && stats.fd > stats.f {
        TieBreak::DottedFibers
    } else {
        TieBreak::None
    };
    RuleVerdict {
        rule,
        lhs,
        threshold,
        applies: tiebreak != TieBreak::None,
        tiebreak,
    }
}
