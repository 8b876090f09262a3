//! Bound verification campaigns over graph corpora.

use crate::input::Item;
use crate::SCHEMA_VERSION;
use anyhow::{Context, Result};
use cubicdom::graph::{
    girth, graph6_decode, graph6_encode, has_cycle_of_length_with_budget, MarkedGraph, DEFAULT_CYCLE_BUDGET,
};
use cubicdom::solver::{is_md_set, mdom_exact, SolverError};
use cubicdom::{Rational12, VertexId};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::path::Path;
use std::time::Instant;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Filters {
    pub min_girth: usize,
    /// Cycle lengths a graph must avoid.
    pub forbidden: Vec<usize>,
    pub bipartite: bool,
    pub cubic_only: bool,
}

impl Filters {
    /// Why `g` fails the filters, given its girth and forbidden hits.
    fn rejection(&self, g: &MarkedGraph, girth: Option<usize>, hits: &[usize]) -> Option<String> {
        if self.cubic_only && !g.is_cubic() {
            return Some("not cubic".into());
        }
        if girth.is_some_and(|l| l < self.min_girth) {
            return Some(format!("girth below {}", self.min_girth));
        }
        if !hits.is_empty() {
            return Some(format!("contains cycles of length {hits:?}"));
        }
        if self.bipartite && !g.is_bipartite() {
            return Some("not bipartite".into());
        }
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordStatus {
    /// Exact domination number computed.
    Evaluated,
    /// The solver hit its budget; `gamma` is an upper bound.
    BudgetExceeded,
    /// Rejected by the filters.
    Filtered,
    /// The generator found no graph for this slot.
    GenerationFailed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub id: String,
    pub n: usize,
    /// `None` for forests.
    pub girth: Option<usize>,
    /// Forbidden cycle lengths present in the graph.
    pub forbidden_hits: Vec<usize>,
    pub status: RecordStatus,
    pub gamma: Option<usize>,
    pub witness: Vec<VertexId>,
    /// `None` when the budget ran out before deciding the bound.
    pub bound_holds: Option<bool>,
    pub runtime_ms: Option<u64>,
    pub graph6: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Record {
    /// Recomputes a violation from scratch: the witness dominates the
    /// graph, has size `gamma`, and exceeds `bound * n`.
    pub fn reverify_violation(&self, bound: Rational12) -> bool {
        let (Some(gamma), Ok(g)) = (self.gamma, graph6_decode(&self.graph6)) else {
            return false;
        };
        self.status == RecordStatus::Evaluated
            && self.witness.len() == gamma
            && is_md_set(&g, &self.witness)
            && !within(gamma, g.n(), bound)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaRatio {
    pub gamma: usize,
    pub n: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    /// Graphs that passed the filters and reached the solver.
    pub count: usize,
    /// Ids of the records with `bound_holds == Some(false)`.
    pub violations: Vec<String>,
    /// Ids of the budget-degraded records.
    pub budget_flagged: Vec<String>,
    pub filtered: usize,
    pub generation_failures: usize,
    /// Largest exact `gamma / n` among evaluated records.
    pub max_gamma_ratio: Option<GammaRatio>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub schema_version: u32,
    pub source: String,
    pub filters: Filters,
    pub bound: Rational12,
    pub budget: u64,
    pub records: Vec<Record>,
    pub summary: Summary,
}

#[derive(Debug, Clone)]
pub struct CampaignOptions {
    pub filters: Filters,
    pub bound: Rational12,
    pub budget: u64,
    /// Record solver wall time; off for byte-stable reports.
    pub timing: bool,
}

fn within(gamma: usize, n: usize, bound: Rational12) -> bool {
    Rational12::int(gamma as i64) <= bound * n as i64
}

fn evaluate(item: &Item, opts: &CampaignOptions) -> Record {
    let g = match &item.graph {
        Ok(g) => g,
        Err(reason) => {
            return Record {
                id: item.id.clone(),
                n: 0,
                girth: None,
                forbidden_hits: Vec::new(),
                status: RecordStatus::GenerationFailed,
                gamma: None,
                witness: Vec::new(),
                bound_holds: None,
                runtime_ms: None,
                graph6: String::new(),
                note: Some(reason.clone()),
            }
        }
    };
    let gl = girth(g).finite();
    let mut hits = Vec::new();
    let mut note = None;
    for &k in &opts.filters.forbidden {
        match has_cycle_of_length_with_budget(g, k, DEFAULT_CYCLE_BUDGET) {
            Ok(true) => hits.push(k),
            Ok(false) => {}
            Err(e) => note = Some(format!("length {k}: {e}")),
        }
    }
    let mut rec = Record {
        id: item.id.clone(),
        n: g.n(),
        girth: gl,
        forbidden_hits: hits,
        status: RecordStatus::Filtered,
        gamma: None,
        witness: Vec::new(),
        bound_holds: None,
        runtime_ms: None,
        graph6: graph6_encode(g),
        note,
    };
    if let Some(reason) = opts.filters.rejection(g, gl, &rec.forbidden_hits) {
        rec.note = Some(reason);
        return rec;
    }
    let start = Instant::now();
    let result = mdom_exact(g, opts.budget);
    if opts.timing {
        rec.runtime_ms = Some(start.elapsed().as_millis() as u64);
    }
    match result {
        Ok(w) => {
            rec.status = RecordStatus::Evaluated;
            rec.bound_holds = Some(within(w.size, g.n(), opts.bound));
            rec.gamma = Some(w.size);
            rec.witness = w.set;
        }
        Err(SolverError::BudgetExceeded { incumbent }) => {
            rec.status = RecordStatus::BudgetExceeded;
            // an incumbent inside the bound still proves it
            rec.bound_holds = within(incumbent.size, g.n(), opts.bound).then_some(true);
            rec.gamma = Some(incumbent.size);
            rec.witness = incumbent.set;
        }
        Err(e @ SolverError::MarkedInput) => {
            rec.note = Some(e.to_string());
        }
    }
    rec
}

fn summarize(records: &[Record]) -> Summary {
    let mut s = Summary {
        count: 0,
        violations: Vec::new(),
        budget_flagged: Vec::new(),
        filtered: 0,
        generation_failures: 0,
        max_gamma_ratio: None,
    };
    for r in records {
        match r.status {
            RecordStatus::Filtered => s.filtered += 1,
            RecordStatus::GenerationFailed => s.generation_failures += 1,
            RecordStatus::BudgetExceeded => {
                s.count += 1;
                s.budget_flagged.push(r.id.clone());
            }
            RecordStatus::Evaluated => {
                s.count += 1;
                let gamma = r.gamma.expect("evaluated records carry gamma");
                // compare gamma/n exactly by cross-multiplying
                let better = s.max_gamma_ratio.is_none_or(|m| gamma * m.n > m.gamma * r.n);
                if r.n > 0 && better {
                    s.max_gamma_ratio = Some(GammaRatio {
                        gamma,
                        n: r.n,
                        value: gamma as f64 / r.n as f64,
                    });
                }
            }
        }
        if r.bound_holds == Some(false) {
            s.violations.push(r.id.clone());
        }
    }
    s
}

/// Runs the solver on every item in parallel; records keep input order.
pub fn run_campaign(source: &str, items: &[Item], opts: &CampaignOptions) -> CampaignReport {
    let records: Vec<Record> = items.par_iter().map(|item| evaluate(item, opts)).collect();
    CampaignReport {
        schema_version: SCHEMA_VERSION,
        source: source.to_string(),
        filters: opts.filters.clone(),
        bound: opts.bound,
        budget: opts.budget,
        summary: summarize(&records),
        records,
    }
}

impl CampaignReport {
    /// 1 when a violation was found, else 2 when a record is budget
    /// degraded, else 0.
    pub fn exit_code(&self) -> i32 {
        if !self.summary.violations.is_empty() {
            1
        } else if !self.summary.budget_flagged.is_empty() {
            2
        } else {
            0
        }
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        #[derive(Serialize)]
        struct Row<'a> {
            id: &'a str,
            n: usize,
            girth: Option<usize>,
            status: RecordStatus,
            gamma: Option<usize>,
            bound_holds: Option<bool>,
            gamma_over_n: Option<f64>,
            runtime_ms: Option<u64>,
        }
        let mut w = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
        for r in &self.records {
            w.serialize(Row {
                id: &r.id,
                n: r.n,
                girth: r.girth,
                status: r.status,
                gamma: r.gamma,
                bound_holds: r.bound_holds,
                gamma_over_n: r.gamma.filter(|_| r.n > 0).map(|g| g as f64 / r.n as f64),
                runtime_ms: r.runtime_ms,
            })?;
        }
        w.flush()?;
        Ok(())
    }
}
