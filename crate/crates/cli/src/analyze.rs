//! Structural analysis: colored multigraph, path scores and the cycle
//! discharge fixpoint.

use crate::input::Item;
use crate::SCHEMA_VERSION;
use cubicdom::discharge::attach::star_groups;
use cubicdom::discharge::fixpoint::check_lemmas;
use cubicdom::discharge::{apply_rules_fixpoint, choose_side, find_cycles, FixpointOutcome, SideChoice};
use cubicdom::graph::graph6_encode;
use cubicdom::multigraph::ColoredMultigraph;
use cubicdom::path_score::{annotate, find_max_paths, score_path, score_reverse, GreenBlackPath, PathCensus};
use cubicdom::reductions::reduce_default;
use cubicdom::Rational12;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Copy, Default)]
pub struct AnalyzeOptions {
    pub dump_multigraph: bool,
    pub score_paths: bool,
    pub discharge: bool,
    /// Analyze the residual of the default reduction instead of the input.
    pub reduce_first: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PathEntry {
    pub path: GreenBlackPath,
    pub census: Option<PathCensus>,
    pub score: Option<Rational12>,
    pub score_reverse: Option<Rational12>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CycleEntry {
    pub cycle: GreenBlackPath,
    pub groups: usize,
    pub fixpoint: Option<FixpointOutcome>,
    pub lemmas_hold: Option<bool>,
    pub choice: Option<SideChoice>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Analysis {
    pub id: String,
    pub n: usize,
    /// The analyzed graph when it differs from the input.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_graph6: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multigraph: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paths: Option<Vec<PathEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycles: Option<Vec<CycleEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub schema_version: u32,
    pub records: Vec<Analysis>,
}

fn path_entry(m: &ColoredMultigraph, path: GreenBlackPath) -> PathEntry {
    match annotate(m, &path) {
        Ok(census) => PathEntry {
            score: Some(score_path(&census.annotation)),
            score_reverse: Some(score_reverse(&census.annotation)),
            census: Some(census),
            path,
            error: None,
        },
        Err(e) => PathEntry {
            path,
            census: None,
            score: None,
            score_reverse: None,
            error: Some(e.to_string()),
        },
    }
}

fn cycle_entry(m: &ColoredMultigraph, cycle: GreenBlackPath) -> CycleEntry {
    let config = star_groups(m, &cycle);
    let mut entry = CycleEntry {
        cycle,
        groups: config.groups.len(),
        fixpoint: None,
        lemmas_hold: None,
        choice: None,
        error: None,
    };
    let result = config.validate().and_then(|()| {
        let artifacts = config.artifacts();
        let out = apply_rules_fixpoint(config.k, &artifacts)?;
        let lemmas = check_lemmas(&artifacts, &out.coloring);
        let choice = choose_side(&config, &out.coloring)?;
        Ok((out, lemmas.holds(), choice))
    });
    match result {
        Ok((out, holds, choice)) => {
            entry.fixpoint = Some(out);
            entry.lemmas_hold = Some(holds);
            entry.choice = Some(choice);
        }
        Err(e) => entry.error = Some(e.to_string()),
    }
    entry
}

fn analyze_one(item: &Item, opts: &AnalyzeOptions) -> Analysis {
    let mut a = Analysis {
        id: item.id.clone(),
        n: 0,
        residual_graph6: None,
        multigraph: None,
        paths: None,
        cycles: None,
        error: None,
    };
    let input = match &item.graph {
        Ok(g) => g,
        Err(e) => {
            a.error = Some(e.clone());
            return a;
        }
    };
    a.n = input.n();
    let reduced;
    let g = if opts.reduce_first {
        reduced = reduce_default(input).0;
        a.residual_graph6 = Some(graph6_encode(&reduced));
        &reduced
    } else {
        input
    };
    let m = match ColoredMultigraph::build(g) {
        Ok(m) => m,
        Err(e) => {
            a.error = Some(e.to_string());
            return a;
        }
    };
    if opts.dump_multigraph {
        a.multigraph = Some(m.to_json());
    }
    if opts.score_paths {
        match find_max_paths(&m) {
            Ok(d) => a.paths = Some(d.paths.into_iter().map(|p| path_entry(&m, p)).collect()),
            Err(e) => a.error = Some(e.to_string()),
        }
    }
    if opts.discharge {
        match find_cycles(&m) {
            Ok(cs) => a.cycles = Some(cs.into_iter().map(|c| cycle_entry(&m, c)).collect()),
            Err(e) => a.error = Some(e.to_string()),
        }
    }
    a
}

pub fn run_analyze(items: &[Item], opts: &AnalyzeOptions) -> AnalyzeReport {
    AnalyzeReport {
        schema_version: SCHEMA_VERSION,
        records: items.par_iter().map(|item| analyze_one(item, opts)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cubicdom::graph::MarkedGraph;
    use cubicdom::path_score::gadgets::{cap_all, join};

    /// An alternating cycle of `k` single-subdivision greens closed by
    /// black edges, each node capped to degree 3.
    fn green_cycle(k: usize) -> MarkedGraph {
        let mut g = MarkedGraph::new(2 * k);
        for j in 0..k {
            join(&mut g, 2 * j, 2 * j + 1, 1);
            join(&mut g, 2 * j + 1, (2 * j + 2) % (2 * k), 0);
        }
        cap_all(&mut g, &(0..2 * k).collect::<Vec<_>>());
        g
    }

    fn item(g: MarkedGraph) -> Item {
        Item {
            id: "t".into(),
            graph: Ok(g),
        }
    }

    #[test]
    fn bare_green_cycle() {
        let opts = AnalyzeOptions {
            dump_multigraph: true,
            score_paths: true,
            discharge: true,
            reduce_first: false,
        };
        let rep = run_analyze(&[item(green_cycle(4))], &opts);
        let a = &rep.records[0];
        assert!(a.error.is_none(), "{:?}", a.error);
        assert_eq!(a.paths.as_ref().unwrap().len(), 0);
        let cycles = a.cycles.as_ref().unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].cycle.k(), 4);
        assert_eq!(cycles[0].lemmas_hold, Some(true));
        assert!(cycles[0].choice.as_ref().unwrap().total >= Rational12::ZERO);
        assert!(a.multigraph.is_some());
    }

    #[test]
    fn build_errors_are_reported() {
        let opts = AnalyzeOptions {
            dump_multigraph: true,
            ..Default::default()
        };
        let rep = run_analyze(&[item(MarkedGraph::new(3))], &opts);
        assert!(rep.records[0].error.is_some());
    }
}
