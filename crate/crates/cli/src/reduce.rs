//! Constructive reduction runs with traces and weight certificates.

use crate::input::Item;
use crate::SCHEMA_VERSION;
use anyhow::{bail, Context, Result};
use cubicdom::graph::graph6_encode;
use cubicdom::reductions::{default_order, reduce_fixpoint, replay, rule};
use cubicdom::solver::is_md_set;
use cubicdom::weights::graph_weight;
use rayon::prelude::*;
use serde::Serialize;
use std::path::{Path, PathBuf};

/// Rule ids from `default` or a comma-separated list.
pub fn parse_order(s: &str) -> Result<Vec<&'static str>> {
    if s.trim() == "default" {
        return Ok(default_order());
    }
    let mut out = Vec::new();
    for id in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        out.push(rule(id)?.id);
    }
    if out.is_empty() {
        bail!("empty rule order");
    }
    Ok(out)
}

/// `12 |D| <= w(G)` for the MD-set assembled from an emptying trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub set: Vec<usize>,
    pub weight: u64,
    pub is_md_set: bool,
    pub weight_bound_holds: bool,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.is_md_set && self.weight_bound_holds
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReduceRecord {
    pub id: String,
    pub n: usize,
    pub weight: u64,
    pub steps: usize,
    /// Vertices the steps commit to the dominating set.
    pub dominators: u64,
    pub residual_n: usize,
    pub residual_edges: usize,
    pub emptied: bool,
    pub certificate: Option<Certificate>,
    pub trace_path: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReduceSummary {
    pub count: usize,
    pub emptied: usize,
    pub certificate_failures: Vec<String>,
    pub errors: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReduceReport {
    pub schema_version: u32,
    pub order: Vec<&'static str>,
    pub records: Vec<ReduceRecord>,
    pub summary: ReduceSummary,
}

impl ReduceReport {
    /// 1 if a certificate fails or an input could not be reduced.
    pub fn exit_code(&self) -> i32 {
        i32::from(!self.summary.certificate_failures.is_empty() || self.summary.errors > 0)
    }
}

fn trace_file(dir: &Path, id: &str) -> PathBuf {
    let safe: String = id
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect();
    dir.join(format!("{safe}.trace.json"))
}

fn reduce_one(item: &Item, order: &[&'static str], trace_dir: Option<&Path>) -> Result<ReduceRecord> {
    let g = item.graph.as_ref().map_err(|e| anyhow::anyhow!("{e}"))?;
    let weight = graph_weight(g).total;
    let (residual, trace) = reduce_fixpoint(g, order)?;
    let emptied = residual.n() == 0;
    let certificate = if emptied {
        let w = replay(g, &trace, &[])?;
        Some(Certificate {
            is_md_set: is_md_set(g, &w.set),
            weight_bound_holds: 12 * w.size as u64 <= weight,
            set: w.set,
            weight,
        })
    } else {
        None
    };
    let trace_path = match trace_dir {
        Some(dir) => {
            let path = trace_file(dir, &item.id);
            let doc = serde_json::json!({
                "schema_version": SCHEMA_VERSION,
                "id": item.id,
                "graph6": graph6_encode(g),
                "steps": trace.to_json(g.n()),
                "residual_graph6": graph6_encode(&residual),
                "residual_marked": residual.marked_vertices(),
            });
            std::fs::write(&path, serde_json::to_string_pretty(&doc)? + "\n")
                .with_context(|| format!("writing {}", path.display()))?;
            Some(path.display().to_string())
        }
        None => None,
    };
    Ok(ReduceRecord {
        id: item.id.clone(),
        n: g.n(),
        weight,
        steps: trace.steps.len(),
        dominators: trace.total_alpha(),
        residual_n: residual.n(),
        residual_edges: residual.edge_count(),
        emptied,
        certificate,
        trace_path,
        error: None,
    })
}

pub fn run_reduce(items: &[Item], order: &[&'static str], trace_dir: Option<&Path>) -> Result<ReduceReport> {
    if let Some(dir) = trace_dir {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let records: Vec<ReduceRecord> = items
        .par_iter()
        .map(|item| {
            reduce_one(item, order, trace_dir).unwrap_or_else(|e| ReduceRecord {
                id: item.id.clone(),
                n: item.graph.as_ref().map_or(0, |g| g.n()),
                weight: 0,
                steps: 0,
                dominators: 0,
                residual_n: 0,
                residual_edges: 0,
                emptied: false,
                certificate: None,
                trace_path: None,
                error: Some(format!("{e:#}")),
            })
        })
        .collect();
    let summary = ReduceSummary {
        count: records.len(),
        emptied: records.iter().filter(|r| r.emptied).count(),
        certificate_failures: records
            .iter()
            .filter(|r| r.certificate.as_ref().is_some_and(|c| !c.holds()))
            .map(|r| r.id.clone())
            .collect(),
        errors: records.iter().filter(|r| r.error.is_some()).count(),
    };
    Ok(ReduceReport {
        schema_version: SCHEMA_VERSION,
        order: order.to_vec(),
        records,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use cubicdom::graph::families::{cycle, heawood};

    #[test]
    fn order_parsing() {
        assert_eq!(parse_order("default").unwrap(), default_order());
        let first = default_order()[0];
        assert_eq!(parse_order(&format!(" {first} ")).unwrap(), vec![first]);
        assert!(parse_order("R-nope").is_err());
        assert!(parse_order(",").is_err());
    }

    #[test]
    fn certificates_on_cycles() {
        let items: Vec<Item> = (3..12)
            .map(|n| Item {
                id: format!("c{n}"),
                graph: Ok(cycle(n)),
            })
            .collect();
        let rep = run_reduce(&items, &default_order(), None).unwrap();
        let emptied: Vec<usize> = rep.records.iter().filter(|r| r.emptied).map(|r| r.n).collect();
        assert_eq!(emptied, [6, 8, 9, 10, 11]);
        for r in rep.records.iter().filter(|r| r.emptied) {
            let c = r.certificate.as_ref().unwrap();
            assert!(c.holds(), "{}", r.id);
            assert_eq!(c.weight, 5 * r.n as u64);
            assert_eq!(c.set.len(), r.n.div_ceil(3));
        }
        assert_eq!(rep.exit_code(), 0);
    }

    #[test]
    fn residual_is_reported_for_heawood() {
        let items = vec![Item {
            id: "heawood".into(),
            graph: Ok(heawood()),
        }];
        let rep = run_reduce(&items, &default_order(), None).unwrap();
        let r = &rep.records[0];
        assert!(!r.emptied && r.certificate.is_none());
        assert_eq!(r.residual_n, 14);
    }
}
