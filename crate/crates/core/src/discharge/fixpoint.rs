//! Rule application loop, the structural properties of its fixpoints and
//! the final choice of a side.

use super::rules::{cut_stats, rule_lhs, switch_cut, CutStats, RuleId};
use super::structures::{group_context, structure_score, ScorePair};
use super::{
    black_ends, derive_sets, dotted_fibers, link_state, schedule_total, Artifact, ArtifactKind, CycleColoring,
    CycleConfig, DischargeError, GreenColor, LinkState, Side, COLOR_CHANGE_COST,
};
use crate::rational::Rational12;
use serde::Serialize;
use std::cmp::Ordering;

/// Default bound on rule applications.
pub const MAX_STEPS: usize = 1000;

/// Progress measure: larger scheduled total first, then fewer color
/// changes, then fewer dotted fibers. Smaller is better.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Measure {
    pub score: Rational12,
    pub color_changes: usize,
    pub dotted_fibers: usize,
}

impl Measure {
    pub fn of(artifacts: &[Artifact], c: &CycleColoring) -> Self {
        Measure {
            score: schedule_total(artifacts, c),
            color_changes: c.color_changes.len(),
            dotted_fibers: dotted_fibers(artifacts, c),
        }
    }

    fn key(&self) -> (Rational12, usize, usize) {
        (-self.score, self.color_changes, self.dotted_fibers)
    }
}

impl PartialOrd for Measure {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Measure {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LogEntry {
    pub rule: RuleId,
    pub cut: (usize, usize),
    pub stats: CutStats,
    pub lhs: Rational12,
    pub measure_before: Measure,
    pub measure_after: Measure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixpointOutcome {
    pub coloring: CycleColoring,
    pub log: Vec<LogEntry>,
}

/// The first applicable full rule, by priority and then by cut.
pub fn find_applicable(
    artifacts: &[Artifact],
    c: &CycleColoring,
) -> Result<Option<(RuleId, (usize, usize), CutStats, Rational12)>, DischargeError> {
    let k = c.k();
    for rule in [RuleId::R1, RuleId::R2, RuleId::R3] {
        for j in 0..k {
            for jj in j + 1..k {
                let ends = u32::from(c.is_color_change(j)) + u32::from(c.is_color_change(jj));
                if ends != rule.color_change_ends() {
                    continue;
                }
                let stats = cut_stats(artifacts, c, (j, jj))?;
                let verdict = rule_lhs(rule, &stats);
                if verdict.applies {
                    return Ok(Some((rule, (j, jj), stats, verdict.lhs)));
                }
            }
        }
    }
    Ok(None)
}

/// Applies the rules from the all-amber coloring until none applies.
pub fn apply_rules_fixpoint(k: usize, artifacts: &[Artifact]) -> Result<FixpointOutcome, DischargeError> {
    apply_rules_from(derive_sets(&vec![GreenColor::Amber; k]), artifacts, MAX_STEPS)
}

pub fn apply_rules_from(
    start: CycleColoring,
    artifacts: &[Artifact],
    max_steps: usize,
) -> Result<FixpointOutcome, DischargeError> {
    let mut c = start;
    let mut log = Vec::new();
    while let Some((rule, cut, stats, lhs)) = find_applicable(artifacts, &c)? {
        if log.len() == max_steps {
            return Err(DischargeError::StepLimit(max_steps));
        }
        let next = switch_cut(&c, cut)?;
        let before = Measure::of(artifacts, &c);
        let after = Measure::of(artifacts, &next);
        if after >= before {
            return Err(DischargeError::NonTermination { rule, cut });
        }
        log.push(LogEntry {
            rule,
            cut,
            stats,
            lhs,
            measure_before: before,
            measure_after: after,
        });
        c = next;
    }
    Ok(FixpointOutcome { coloring: c, log })
}

/// Violations of the properties every fixpoint is expected to have.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    /// Blacks whose two ends both carry an extremity of a badly colored link.
    pub black_between_bad_links: Vec<usize>,
    /// Color changes `(j, j')` with no link extremity in between whose
    /// other extremity is undotted.
    pub consecutive_color_changes: Vec<(usize, usize)>,
    /// Fibers on a dotted position.
    pub fibers_hit_by_color_change: Vec<usize>,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.black_between_bad_links.is_empty()
            && self.consecutive_color_changes.is_empty()
            && self.fibers_hit_by_color_change.is_empty()
    }
}

pub fn check_lemmas(artifacts: &[Artifact], c: &CycleColoring) -> LemmaReport {
    let k = c.k();
    let n = 2 * k;
    let mut bad_at = vec![false; n];
    // positions holding a link extremity whose other extremity is undotted
    let mut live_at = vec![false; n];
    let mut report = LemmaReport::default();
    for a in artifacts {
        match a.kind {
            ArtifactKind::Fiber => {
                if c.dotted[a.ends[0]] {
                    report.fibers_hit_by_color_change.push(a.ends[0]);
                }
            }
            _ => {
                let (p, q) = (a.ends[0], a.ends[1]);
                if link_state(c, p, q) == LinkState::Bad {
                    bad_at[p] = true;
                    bad_at[q] = true;
                }
                live_at[p] |= !c.dotted[q];
                live_at[q] |= !c.dotted[p];
            }
        }
    }
    for j in 0..k {
        let (p, q) = black_ends(j, k);
        if bad_at[p] && bad_at[q] {
            report.black_between_bad_links.push(j);
        }
    }
    let changes = &c.color_changes;
    if changes.len() >= 2 {
        for (i, &j) in changes.iter().enumerate() {
            let next = changes[(i + 1) % changes.len()];
            // positions strictly after black j and strictly before black next
            let mut p = (2 * j + 3) % n;
            let stop = (2 * next + 1) % n;
            let mut separated = false;
            while p != stop {
                separated |= live_at[p];
                p = (p + 1) % n;
            }
            if !separated {
                report.consecutive_color_changes.push((j, next));
            }
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SideChoice {
    pub side: Side,
    pub total: Rational12,
    pub total_a: Rational12,
    pub total_b: Rational12,
    /// Score pair of every star group, in group order.
    pub groups: Vec<ScorePair>,
}

/// Sums the score pairs of all star groups, charges every color change on
/// both sides and picks the better side (A on ties).
pub fn choose_side(config: &CycleConfig, c: &CycleColoring) -> Result<SideChoice, DischargeError> {
    let groups = config
        .groups
        .iter()
        .map(|g| structure_score(&group_context(g, c)))
        .collect::<Result<Vec<_>, _>>()?;
    let cost = COLOR_CHANGE_COST * c.color_changes.len() as i64;
    let total_a = groups.iter().map(|p| p.a).sum::<Rational12>() - cost;
    let total_b = groups.iter().map(|p| p.b).sum::<Rational12>() - cost;
    let (side, total) = if total_a >= total_b {
        (Side::A, total_a)
    } else {
        (Side::B, total_b)
    };
    Ok(SideChoice {
        side,
        total,
        total_a,
        total_b,
        groups,
    })
}
