//! The vertex weight potential and the reduction contract.
//!
//! Unmarked vertices weigh 12, 8, 5 or 4 by degree 0, 1, 2 or 3; marked
//! vertices weigh 4. A reduction `G -> H` with `mdom(G) <= mdom(H) + alpha`
//! and `w(G) >= w(H) + beta` preserves `12 mdom <= w` whenever
//! `beta >= 12 alpha`.

use crate::graph::{degree_profile, MarkedGraph, Remap, VertexId};
use crate::solver::{is_md_set, mdom_exact, SolverError};
use serde::Serialize;

pub const MARKED_WEIGHT: u64 = 4;
/// Weights of unmarked vertices indexed by degree.
pub const UNMARKED_WEIGHT: [u64; 4] = [12, 8, 5, 4];

pub fn vertex_weight(g: &MarkedGraph, v: VertexId) -> u64 {
    if g.is_marked(v) {
        MARKED_WEIGHT
    } else {
        UNMARKED_WEIGHT[g.degree(v)]
    }
}

/// Weight of `g` split by vertex class.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct WeightReport {
    pub total: u64,
    pub marked: u64,
    pub n3: u64,
    pub n2: u64,
    pub n1: u64,
    pub n0: u64,
}

pub fn graph_weight(g: &MarkedGraph) -> WeightReport {
    let p = degree_profile(g);
    let marked = MARKED_WEIGHT * p.markn as u64;
    let n3 = UNMARKED_WEIGHT[3] * p.n3 as u64;
    let n2 = UNMARKED_WEIGHT[2] * p.n2 as u64;
    let n1 = UNMARKED_WEIGHT[1] * p.n1 as u64;
    let n0 = UNMARKED_WEIGHT[0] * p.n0 as u64;
    WeightReport {
        total: marked + n3 + n2 + n1 + n0,
        marked,
        n3,
        n2,
        n1,
        n0,
    }
}

pub fn weight(g: &MarkedGraph) -> u64 {
    graph_weight(g).total
}

/// Outcome of the exact-solver comparison inside a contract check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleOutcome {
    Holds { mdom_g: usize, mdom_h: usize },
    Fails { mdom_g: usize, mdom_h: usize },
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContractVerdict {
    pub alpha: u64,
    pub beta_actual: i64,
    /// `beta_actual >= 12 alpha`.
    pub weight_valid: bool,
    /// `beta_actual > 12 alpha`.
    pub strict: bool,
    pub oracle: OracleOutcome,
    /// Whether an optimal MD-set of `h`, lifted and joined with the
    /// extension, dominates `g`; `None` when the oracle ran out of budget.
    pub lifted_valid: Option<bool>,
    pub valid: bool,
}

/// Checks a reduction `g -> h`, where `remap` maps `g` ids to `h` ids and
/// `extension` is the claimed set of at most `alpha` vertices of `g`.
pub fn contract_check(
    g: &MarkedGraph,
    h: &MarkedGraph,
    remap: &Remap,
    alpha: u64,
    extension: &[VertexId],
    budget: u64,
) -> ContractVerdict {
    let beta_actual = weight(g) as i64 - weight(h) as i64;
    let weight_valid = beta_actual >= 12 * alpha as i64;
    let strict = beta_actual > 12 * alpha as i64;
    let size_ok = extension.len() as u64 <= alpha;
    let solved = (mdom_exact(g, budget), mdom_exact(h, budget));
    let (oracle, lifted_valid) = match solved {
        (Ok(wg), Ok(wh)) => {
            let holds = wg.size as u64 <= wh.size as u64 + alpha;
            let mut lifted = remap.lift(&wh.set);
            lifted.extend_from_slice(extension);
            lifted.sort_unstable();
            lifted.dedup();
            let outcome = if holds {
                OracleOutcome::Holds {
                    mdom_g: wg.size,
                    mdom_h: wh.size,
                }
            } else {
                OracleOutcome::Fails {
                    mdom_g: wg.size,
                    mdom_h: wh.size,
                }
            };
            (outcome, Some(size_ok && is_md_set(g, &lifted)))
        }
        (Err(SolverError::BudgetExceeded { .. }), _) | (_, Err(SolverError::BudgetExceeded { .. })) => {
            (OracleOutcome::BudgetExceeded, None)
        }
        (Err(e), _) | (_, Err(e)) => unreachable!("mdom_exact only fails on budget: {e}"),
    };
    let valid = weight_valid && !matches!(oracle, OracleOutcome::Fails { .. }) && lifted_valid != Some(false);
    ContractVerdict {
        alpha,
        beta_actual,
        weight_valid,
        strict,
        oracle,
        lifted_valid,
        valid,
    }
}
