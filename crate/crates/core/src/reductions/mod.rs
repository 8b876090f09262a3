//! Reduction rules on marked subcubic graphs.
//!
//! Each rule pairs a detector with an excision recipe and an `(alpha, beta)`
//! contract: every MD-set of the reduced graph `H` extends to one of `G`
//! with the rule's `alpha` dominators, and `w(G) - w(H) >= beta`, where
//! `beta >= 12 alpha`.
//!
//! Detectors never trust that earlier rules have run. A candidate binding
//! is accepted only when its recipe passes a local certificate: the
//! dominators cover every unmarked vertex that the recipe removes or newly
//! marks, the exact weight drop reaches the claimed `beta`, and the step
//! strictly decreases `(|V| + |E|, marked degree-3 count)`.

mod colored;
mod endgame;
pub mod instances;
mod local;
mod pattern;

use crate::graph::{excise, girth, has_cycle_of_length_with_budget, MarkedGraph, Remap, VertexId};
use crate::solver::{is_md_set, DominatingWitness};
use crate::weights::{MARKED_WEIGHT, UNMARKED_WEIGHT};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("unknown rule id {0:?}")]
    UnknownRule(String),
    #[error("match is not valid for rule {rule}: {reason}")]
    InvalidMatch { rule: String, reason: String },
    #[error("the residual set is not an MD-set of the residual graph")]
    InvalidResidual,
    #[error("lifted set fails to dominate the graph before step {step}")]
    LiftFailure { step: usize },
}

/// Global cycle conditions a rule requires of the whole graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    None,
    /// Girth at least 6.
    Girth6,
    /// Girth at least 6 and no cycle of length 7 or 8.
    Girth6NoC7C8,
}

/// Budget for the exact-length cycle searches behind [`Hypothesis`].
const HYPOTHESIS_BUDGET: u64 = 20_000_000;

impl Hypothesis {
    /// Whether `g` satisfies the condition. Searches that run out of budget
    /// count as failures.
    pub fn holds(self, g: &MarkedGraph) -> bool {
        match self {
            Hypothesis::None => true,
            Hypothesis::Girth6 => girth(g).at_least(6),
            Hypothesis::Girth6NoC7C8 => {
                girth(g).at_least(6)
                    && [7, 8]
                        .iter()
                        .all(|&k| matches!(has_cycle_of_length_with_budget(g, k, HYPOTHESIS_BUDGET), Ok(false)))
            }
        }
    }
}

/// Match parameters the contract depends on.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Params {
    /// Number of long colored paths in the configuration.
    pub ell: u32,
    /// Size parameter: cycle length for cycle rules, `k` for girth rules.
    pub size: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Contract {
    pub alpha: u64,
    pub beta: u64,
}

pub struct ReductionRule {
    pub id: &'static str,
    pub description: &'static str,
    /// Human-readable `(alpha, beta)` formula.
    pub formula: &'static str,
    pub hypothesis: Hypothesis,
    contract: fn(Params) -> Option<Contract>,
    detector: fn(&mut Finder<'_>),
}

impl ReductionRule {
    /// The contract for `p`, or `None` outside the rule's parameter range.
    pub fn contract(&self, p: Params) -> Option<Contract> {
        (self.contract)(p)
    }
}

impl std::fmt::Debug for ReductionRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ReductionRule")
            .field("id", &self.id)
            .field("formula", &self.formula)
            .field("hypothesis", &self.hypothesis)
            .finish()
    }
}

impl Serialize for ReductionRule {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(4))?;
        m.serialize_entry("id", self.id)?;
        m.serialize_entry("description", self.description)?;
        m.serialize_entry("contract", self.formula)?;
        m.serialize_entry("hypothesis", &self.hypothesis)?;
        m.end()
    }
}

/// Role names bound to vertices, in role order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Bindings(pub Vec<(&'static str, VertexId)>);

impl Bindings {
    pub fn get(&self, role: &str) -> Option<VertexId> {
        self.0.iter().find(|(r, _)| *r == role).map(|&(_, v)| v)
    }

    fn mapped(&self, f: impl Fn(VertexId) -> VertexId) -> Bindings {
        Bindings(self.0.iter().map(|&(r, v)| (r, f(v))).collect())
    }
}

impl Serialize for Bindings {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (role, v) in &self.0 {
            m.serialize_entry(role, v)?;
        }
        m.end()
    }
}

/// What a rule does to the graph it matched.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Recipe {
    pub remove: Vec<VertexId>,
    pub mark: Vec<VertexId>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub unmark: Vec<VertexId>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub delete_edges: Vec<(VertexId, VertexId)>,
    pub dominators: Vec<VertexId>,
}

impl Recipe {
    fn mapped(&self, f: impl Fn(VertexId) -> VertexId) -> Recipe {
        let map = |v: &Vec<VertexId>| v.iter().map(|&x| f(x)).collect();
        Recipe {
            remove: map(&self.remove),
            mark: map(&self.mark),
            unmark: map(&self.unmark),
            delete_edges: self.delete_edges.iter().map(|&(a, b)| (f(a), f(b))).collect(),
            dominators: map(&self.dominators),
        }
    }
}

/// A certified occurrence of a rule's configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Match {
    pub rule: &'static str,
    pub bindings: Bindings,
    pub ell: u32,
    pub size: u32,
    pub alpha: u64,
    pub beta_claimed: u64,
    pub recipe: Recipe,
}

impl Match {
    pub fn params(&self) -> Params {
        Params {
            ell: self.ell,
            size: self.size,
        }
    }
}

/// A binding proposed by a detector, before certification.
#[derive(Debug, Clone, Default)]
pub(crate) struct Candidate {
    bindings: Vec<(&'static str, VertexId)>,
    params: Params,
    recipe: Recipe,
}

impl Candidate {
    pub(crate) fn new(bindings: &[(&'static str, VertexId)]) -> Self {
        Candidate {
            bindings: bindings.to_vec(),
            ..Default::default()
        }
    }

    pub(crate) fn remove(mut self, vs: impl IntoIterator<Item = VertexId>) -> Self {
        self.recipe.remove.extend(vs);
        self
    }

    pub(crate) fn mark(mut self, vs: impl IntoIterator<Item = VertexId>) -> Self {
        self.recipe.mark.extend(vs);
        self
    }

    pub(crate) fn unmark(mut self, vs: impl IntoIterator<Item = VertexId>) -> Self {
        self.recipe.unmark.extend(vs);
        self
    }

    pub(crate) fn delete_edge(mut self, a: VertexId, b: VertexId) -> Self {
        self.recipe.delete_edges.push((a, b));
        self
    }

    pub(crate) fn dominators(mut self, vs: impl IntoIterator<Item = VertexId>) -> Self {
        self.recipe.dominators.extend(vs);
        self
    }

    pub(crate) fn ell(mut self, ell: u32) -> Self {
        self.params.ell = ell;
        self
    }

    pub(crate) fn size(mut self, size: u32) -> Self {
        self.params.size = size;
        self
    }
}

/// Collects the first certified candidate a detector offers.
pub(crate) struct Finder<'a> {
    pub(crate) g: &'a MarkedGraph,
    rule: &'a ReductionRule,
    found: Option<Match>,
}

impl Finder<'_> {
    /// Certifies `c`; returns `true` (stop searching) when it is accepted.
    pub(crate) fn offer(&mut self, c: Candidate) -> bool {
        match certify(self.g, self.rule, c) {
            Ok(m) => {
                self.found = Some(m);
                true
            }
            Err(_) => false,
        }
    }
}

fn sorted(mut v: Vec<VertexId>) -> Vec<VertexId> {
    v.sort_unstable();
    v.dedup();
    v
}

/// Exact weight of `g` minus weight of the graph the recipe produces,
/// computed over the vertices the recipe touches.
fn weight_drop(g: &MarkedGraph, r: &Recipe) -> i64 {
    let removed: BTreeSet<VertexId> = r.remove.iter().copied().collect();
    let mut lost: BTreeMap<VertexId, usize> = BTreeMap::new();
    for &v in &r.remove {
        for w in g.neighbors(v) {
            if !removed.contains(&w) {
                *lost.entry(w).or_default() += 1;
            }
        }
    }
    for &(a, b) in &r.delete_edges {
        *lost.entry(a).or_default() += 1;
        *lost.entry(b).or_default() += 1;
    }
    let mut touched: BTreeSet<VertexId> = lost.keys().copied().collect();
    touched.extend(r.mark.iter().copied());
    touched.extend(r.unmark.iter().copied());
    let weight = |marked: bool, degree: usize| {
        if marked {
            MARKED_WEIGHT
        } else {
            UNMARKED_WEIGHT[degree]
        }
    } as i64;
    let mut drop: i64 = r.remove.iter().map(|&v| weight(g.is_marked(v), g.degree(v))).sum();
    for v in touched {
        let before = weight(g.is_marked(v), g.degree(v));
        let marked_after = (g.is_marked(v) || r.mark.contains(&v)) && !r.unmark.contains(&v);
        let after = weight(marked_after, g.degree(v) - lost.get(&v).copied().unwrap_or(0));
        drop += before - after;
    }
    drop
}

/// Validates a candidate against `g` and the rule's contract.
fn certify(g: &MarkedGraph, rule: &ReductionRule, c: Candidate) -> Result<Match, String> {
    let contract = rule.contract(c.params).ok_or("parameters outside the rule's range")?;
    let n = g.n();
    let r = &c.recipe;
    let all = r
        .remove
        .iter()
        .chain(&r.mark)
        .chain(&r.unmark)
        .chain(&r.dominators)
        .chain(r.delete_edges.iter().flat_map(|(a, b)| [a, b]))
        .chain(c.bindings.iter().map(|(_, v)| v));
    if all.into_iter().any(|&v| v >= n) {
        return Err("vertex out of range".into());
    }
    let remove = sorted(r.remove.clone());
    let gone: BTreeSet<VertexId> = remove.iter().copied().collect();
    let mark: Vec<VertexId> = sorted(r.mark.clone())
        .into_iter()
        .filter(|v| !gone.contains(v) && !g.is_marked(*v))
        .collect();
    let unmark = sorted(r.unmark.clone());
    if unmark
        .iter()
        .any(|v| gone.contains(v) || !g.is_marked(*v) || mark.contains(v))
    {
        return Err("unmark applies only to kept marked vertices".into());
    }
    let mut delete_edges: Vec<(VertexId, VertexId)> =
        r.delete_edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    delete_edges.sort_unstable();
    delete_edges.dedup();
    if delete_edges
        .iter()
        .any(|&(a, b)| !g.has_edge(a, b) || gone.contains(&a) || gone.contains(&b))
    {
        return Err("deleted edge is missing or touches a removed vertex".into());
    }
    let dominators = sorted(r.dominators.clone());
    if dominators.len() as u64 != contract.alpha {
        return Err(format!("{} dominators for alpha {}", dominators.len(), contract.alpha));
    }
    let covered = g.closed_neighborhood(&dominators);
    if let Some(v) = remove
        .iter()
        .chain(&mark)
        .find(|&&v| !g.is_marked(v) && !covered.contains(&v))
    {
        return Err(format!("vertex {v} is left undominated"));
    }
    let recipe = Recipe {
        remove,
        mark,
        unmark,
        delete_edges,
        dominators,
    };
    let removed_edges: usize = {
        let mut e = BTreeSet::new();
        for &v in &recipe.remove {
            for w in g.neighbors(v) {
                e.insert((v.min(w), v.max(w)));
            }
        }
        e.len() + recipe.delete_edges.len()
    };
    if recipe.remove.len() + removed_edges == 0 {
        // only marks change: the marked degree-3 count must fall
        let gained = recipe.mark.iter().filter(|&&v| g.degree(v) == 3).count();
        let lost = recipe.unmark.iter().filter(|&&v| g.degree(v) == 3).count();
        if lost <= gained {
            return Err("step makes no progress".into());
        }
    }
    let drop = weight_drop(g, &recipe);
    if drop < contract.beta as i64 {
        return Err(format!("weight drops by {drop}, below {}", contract.beta));
    }
    debug_assert!(contract.beta >= 12 * contract.alpha);
    Ok(Match {
        rule: rule.id,
        bindings: Bindings(c.bindings),
        ell: c.params.ell,
        size: c.params.size,
        alpha: contract.alpha,
        beta_claimed: contract.beta,
        recipe,
    })
}

/// The rule catalog, in default application order.
pub fn catalog() -> &'static [ReductionRule] {
    &CATALOG
}

pub fn rule(id: &str) -> Result<&'static ReductionRule, ReductionError> {
    CATALOG
        .iter()
        .find(|r| r.id == id)
        .ok_or_else(|| ReductionError::UnknownRule(id.to_string()))
}

/// Ids of the catalog in default order.
pub fn default_order() -> Vec<&'static str> {
    CATALOG.iter().map(|r| r.id).collect()
}

/// The first certified binding of `rule` in `g`, in the detector's
/// enumeration order (ascending ids role by role).
pub fn detect(rule: &ReductionRule, g: &MarkedGraph) -> Option<Match> {
    if !rule.hypothesis.holds(g) {
        return None;
    }
    detect_unchecked(rule, g)
}

fn detect_unchecked(rule: &ReductionRule, g: &MarkedGraph) -> Option<Match> {
    let mut f = Finder { g, rule, found: None };
    (rule.detector)(&mut f);
    f.found
}

/// One applied reduction, in the vertex ids of the graph it acted on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    #[serde(rename = "rule")]
    pub matched: Match,
    #[serde(skip)]
    pub remap: Remap,
}

fn run_recipe(g: &MarkedGraph, r: &Recipe) -> (MarkedGraph, Remap) {
    let mut g2 = g.clone();
    for &(a, b) in &r.delete_edges {
        g2.remove_edge(a, b).expect("certified edge");
    }
    for &v in &r.unmark {
        g2.set_marked(v, false);
    }
    excise(&g2, &r.remove, &r.mark)
}

/// Applies a match to `g`, re-certifying it first.
pub fn apply(rule: &ReductionRule, g: &MarkedGraph, m: &Match) -> Result<(MarkedGraph, Step), ReductionError> {
    let invalid = |reason: String| ReductionError::InvalidMatch {
        rule: rule.id.to_string(),
        reason,
    };
    if m.rule != rule.id {
        return Err(invalid(format!("match belongs to {}", m.rule)));
    }
    if !rule.hypothesis.holds(g) {
        return Err(invalid("graph violates the rule's cycle hypothesis".into()));
    }
    let c = Candidate {
        bindings: m.bindings.0.clone(),
        params: m.params(),
        recipe: m.recipe.clone(),
    };
    let certified = certify(g, rule, c).map_err(invalid)?;
    let (h, remap) = run_recipe(g, &certified.recipe);
    Ok((
        h,
        Step {
            matched: certified,
            remap,
        },
    ))
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<Step>,
}

impl ReductionTrace {
    pub fn total_alpha(&self) -> u64 {
        self.steps.iter().map(|s| s.matched.alpha).sum()
    }

    /// Steps as JSON objects with every vertex in the ids of the original
    /// graph.
    pub fn to_json(&self, original_n: usize) -> serde_json::Value {
        let mut orig: Vec<VertexId> = (0..original_n).collect();
        let mut out = Vec::with_capacity(self.steps.len());
        for s in &self.steps {
            let f = |v: VertexId| orig[v];
            let m = &s.matched;
            let r = m.recipe.mapped(f);
            let mut obj = serde_json::json!({
                "rule": m.rule,
                "bindings": m.bindings.mapped(f),
                "removed": r.remove,
                "marked": r.mark,
                "dominators": r.dominators,
                "alpha": m.alpha,
                "beta_claimed": m.beta_claimed,
            });
            if !r.unmark.is_empty() {
                obj["unmarked"] = serde_json::json!(r.unmark);
            }
            if !r.delete_edges.is_empty() {
                obj["deleted_edges"] = serde_json::json!(r.delete_edges);
            }
            out.push(obj);
            orig = (0..s.remap.new_len()).map(|v| orig[s.remap.backward(v)]).collect();
        }
        serde_json::Value::Array(out)
    }
}

impl Serialize for ReductionTrace {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.steps.serialize(s)
    }
}

/// Caches whether a cycle hypothesis holds. Reductions only delete
/// vertices and edges, so a hypothesis that holds keeps holding.
struct HypothesisCache {
    holds: BTreeMap<Hypothesis, bool>,
}

impl HypothesisCache {
    fn check(&mut self, h: Hypothesis, g: &MarkedGraph) -> bool {
        if let Some(true) = self.holds.get(&h) {
            return true;
        }
        let ok = h.holds(g);
        self.holds.insert(h, ok);
        ok
    }

    /// Forgets negative answers after the graph changed.
    fn graph_changed(&mut self) {
        self.holds.retain(|_, ok| *ok);
    }
}

fn progress_measure(g: &MarkedGraph) -> (usize, usize) {
    (g.n() + g.edge_count(), g.marked_cubic_count())
}

/// Applies the first detectable rule of `order` until none applies.
pub fn reduce_fixpoint(g: &MarkedGraph, order: &[&str]) -> Result<(MarkedGraph, ReductionTrace), ReductionError> {
    let rules = order.iter().map(|id| rule(id)).collect::<Result<Vec<_>, _>>()?;
    let mut cur = g.clone();
    let mut trace = ReductionTrace::default();
    let mut cache = HypothesisCache { holds: BTreeMap::new() };
    'outer: loop {
        for r in &rules {
            if !cache.check(r.hypothesis, &cur) {
                continue;
            }
            if let Some(m) = detect_unchecked(r, &cur) {
                let (h, remap) = run_recipe(&cur, &m.recipe);
                assert!(
                    progress_measure(&h) < progress_measure(&cur),
                    "certified step of {} made no progress",
                    r.id
                );
                trace.steps.push(Step { matched: m, remap });
                cur = h;
                cache.graph_changed();
                continue 'outer;
            }
        }
        return Ok((cur, trace));
    }
}

/// Reduces with the default order.
pub fn reduce_default(g: &MarkedGraph) -> (MarkedGraph, ReductionTrace) {
    reduce_fixpoint(g, &default_order()).expect("default order names catalog rules")
}

/// Lifts an MD-set of the residual graph back to `g` through the trace.
pub fn replay(
    g: &MarkedGraph,
    trace: &ReductionTrace,
    residual_mdset: &[VertexId],
) -> Result<DominatingWitness, ReductionError> {
    let mut graphs = vec![g.clone()];
    for s in &trace.steps {
        let cur = graphs.last().expect("nonempty");
        let r = rule(s.matched.rule)?;
        let (h, step) = apply(r, cur, &s.matched)?;
        if step.remap != s.remap {
            return Err(ReductionError::InvalidMatch {
                rule: r.id.to_string(),
                reason: "trace does not reproduce its intermediate graph".into(),
            });
        }
        graphs.push(h);
    }
    let residual = graphs.last().expect("nonempty");
    if !is_md_set(residual, residual_mdset) {
        return Err(ReductionError::InvalidResidual);
    }
    let mut set = sorted(residual_mdset.to_vec());
    for (i, s) in trace.steps.iter().enumerate().rev() {
        let mut lifted = s.remap.lift(&set);
        lifted.extend_from_slice(&s.matched.recipe.dominators);
        set = sorted(lifted);
        if !is_md_set(&graphs[i], &set) {
            return Err(ReductionError::LiftFailure { step: i });
        }
    }
    Ok(DominatingWitness {
        size: set.len(),
        set,
        optimal: false,
    })
}

/// Reduces `g` with the default order and, when the residual is empty,
/// returns the MD-set assembled from the step dominators.
pub fn solve_by_reduction(g: &MarkedGraph) -> Option<(DominatingWitness, ReductionTrace)> {
    let (residual, trace) = reduce_default(g);
    if residual.n() > 0 {
        return None;
    }
    let w = replay(g, &trace, &[]).expect("certified traces lift");
    Some((w, trace))
}

fn fixed(alpha: u64, beta: u64) -> impl Fn(Params) -> Option<Contract> {
    move |_| Some(Contract { alpha, beta })
}

macro_rules! rule {
    ($id:expr, $hyp:ident, $formula:expr, $desc:expr, $contract:expr, $detector:path) => {
        ReductionRule {
            id: $id,
            description: $desc,
            formula: $formula,
            hypothesis: Hypothesis::$hyp,
            contract: $contract,
            detector: $detector,
        }
    };
}

fn up_to(ell: u32, max: u32) -> Option<u32> {
    (ell <= max).then_some(ell)
}

static CATALOG: [ReductionRule; 53] = [
    rule!(
        "R-marked-isolated",
        None,
        "alpha 0, beta 4",
        "isolated marked vertex: delete it",
        |_| fixed(0, 4)(Params::default()),
        local::marked_isolated
    ),
    rule!(
        "R-unmark-deg3",
        None,
        "alpha 0, beta 0",
        "marked vertex of degree 3: unmark it",
        |_| fixed(0, 0)(Params::default()),
        local::unmark_deg3
    ),
    rule!(
        "R-unmarked-isolated",
        None,
        "alpha 1, beta 12",
        "isolated unmarked vertex: take it",
        |_| fixed(1, 12)(Params::default()),
        local::unmarked_isolated
    ),
    rule!(
        "R-unmarked-leaf",
        None,
        "alpha 1, beta 12",
        "unmarked leaf u with neighbor v: delete u and v, mark the other neighbors of v, take v",
        |_| fixed(1, 12)(Params::default()),
        local::unmarked_leaf
    ),
    rule!(
        "R-marked-marked-edge",
        None,
        "alpha 0, beta 0",
        "edge between two marked vertices: delete the edge",
        |_| fixed(0, 0)(Params::default()),
        local::marked_marked_edge
    ),
    rule!(
        "R-marked-leaf",
        None,
        "alpha 0, beta 1",
        "marked leaf: delete it",
        |_| fixed(0, 1)(Params::default()),
        local::marked_leaf
    ),
    rule!(
        "R-marked-beside-deg3",
        None,
        "alpha 0, beta 0",
        "marked degree-2 vertex next to a degree-3 vertex: delete it",
        |_| fixed(0, 0)(Params::default()),
        local::marked_beside_deg3
    ),
    rule!(
        "R-2path-from-marked",
        Girth6,
        "alpha 1, beta 13",
        "marked degree-2 vertex followed by three unmarked degree-2 vertices: delete the four, take the third",
        |_| fixed(1, 13)(Params::default()),
        local::two_path_from_marked
    ),
    rule!(
        "R-marked-close:d2-near",
        Girth6NoC7C8,
        "alpha 1, beta 13",
        "marked vertices two apart on a 2-path whose outer neighbor is marked or cubic",
        |_| fixed(1, 13)(Params::default()),
        local::marked_close_d2_near
    ),
    rule!(
        "R-marked-close:d2-far",
        Girth6NoC7C8,
        "alpha 2, beta 25",
        "marked vertices two apart on a 2-path flanked by unmarked degree-2 vertices",
        |_| fixed(2, 25)(Params::default()),
        local::marked_close_d2_far
    ),
    rule!(
        "R-marked-close:d3-path",
        Girth6NoC7C8,
        "alpha 2, beta 25",
        "marked vertices three apart on a 2-path that continues on one side",
        |_| fixed(2, 25)(Params::default()),
        local::marked_close_d3_path
    ),
    rule!(
        "R-marked-close:d3-cubic",
        Girth6NoC7C8,
        "alpha 2, beta 26",
        "marked vertices three apart on a 2-path of order 6 between cubic vertices",
        |_| fixed(2, 26)(Params::default()),
        local::marked_close_d3_cubic
    ),
    rule!(
        "R-cycle-component",
        None,
        "alpha ceil(n/3), beta 5n (n = 6 or n >= 8)",
        "unmarked cycle component: take every third vertex",
        |p| (p.size == 6 || p.size >= 8).then(|| Contract {
            alpha: p.size.div_ceil(3) as u64,
            beta: 5 * p.size as u64
        }),
        local::cycle_component
    ),
    rule!(
        "R-2path-6",
        None,
        "alpha 2, beta 25",
        "2-path of order 6 next to a cubic vertex: delete it",
        |_| fixed(2, 25)(Params::default()),
        local::two_path_6
    ),
    rule!(
        "R-2path-3",
        None,
        "alpha 1, beta 12",
        "maximal 2-path of order 3 between cubic vertices: delete it",
        |_| fixed(1, 12)(Params::default()),
        local::two_path_3
    ),
    rule!(
        "R-multigraph-loop",
        Girth6,
        "alpha 2, beta 28",
        "long red loop at a cubic vertex",
        |_| fixed(2, 28)(Params::default()),
        colored::loop_red
    ),
    rule!(
        "R-multigraph-black-green",
        Girth6,
        "alpha 2, beta 24",
        "black edge parallel to a long green edge",
        |_| fixed(2, 24)(Params::default()),
        colored::black_green
    ),
    rule!(
        "R-multigraph-green-green",
        Girth6NoC7C8,
        "alpha 3, beta 38",
        "two parallel long green edges",
        |_| fixed(3, 38)(Params::default()),
        colored::green_green_parallel
    ),
    rule!(
        "R-multigraph-red-red",
        Girth6NoC7C8,
        "alpha l+2, beta 14l+28",
        "two parallel red edges",
        |p| up_to(p.ell, 2).map(|l| Contract {
            alpha: l as u64 + 2,
            beta: 14 * l as u64 + 28
        }),
        colored::red_red_parallel
    ),
    rule!(
        "R-multigraph-red-green",
        Girth6NoC7C8,
        "alpha l+2, beta 12l+25",
        "parallel red and green edges",
        |p| up_to(p.ell, 2).map(|l| Contract {
            alpha: l as u64 + 2,
            beta: 12 * l as u64 + 25
        }),
        colored::red_green_parallel
    ),
    rule!(
        "R-green-green",
        None,
        "alpha l+1, beta 14l+12",
        "two green edges at one vertex",
        |p| up_to(p.ell, 2).map(|l| Contract {
            alpha: l as u64 + 1,
            beta: 14 * l as u64 + 12
        }),
        colored::green_green
    ),
    rule!(
        "R-green-red-green",
        None,
        "alpha l+2, beta 14l+26",
        "green-red-green path",
        |p| up_to(p.ell, 3).map(|l| Contract {
            alpha: l as u64 + 2,
            beta: 14 * l as u64 + 26
        }),
        colored::green_red_green
    ),
    rule!(
        "R-longred-blackstar",
        None,
        "alpha 2, beta 25",
        "end of a long red edge whose other two edges are black",
        |_| fixed(2, 25)(Params::default()),
        colored::long_red_black_star
    ),
    rule!(
        "R-green-red-red",
        None,
        "alpha l+2, beta 14l+24",
        "green-red-red path",
        |p| up_to(p.ell, 2).map(|l| Contract {
            alpha: l as u64 + 2,
            beta: 14 * l as u64 + 24
        }),
        colored::green_red_red
    ),
    rule!(
        "R-red-cycle",
        None,
        "alpha k+l, beta 14(k+l)",
        "cycle of red edges",
        |p| (p.size >= 3 && p.ell <= p.size).then(|| Contract {
            alpha: (p.size + p.ell) as u64,
            beta: 14 * (p.size + p.ell) as u64
        }),
        colored::red_cycle
    ),
    rule!(
        "R-red-4path",
        None,
        "alpha l+3, beta 14l+36",
        "path of four red edges",
        |p| up_to(p.ell, 2).map(|l| Contract {
            alpha: l as u64 + 3,
            beta: 14 * l as u64 + 36
        }),
        colored::red_four_path
    ),
    rule!(
        "R-red-longred-red",
        None,
        "alpha 3, beta 36",
        "red path of three edges with a long middle edge",
        |_| fixed(3, 36)(Params::default()),
        colored::red_long_red_red
    ),
    rule!(
        "R-red-doublestar-black",
        Girth6,
        "alpha 2, beta 24",
        "double star with a red center edge, one red leaf edge and black others",
        |_| fixed(2, 24)(Params::default()),
        colored::red_double_star_black
    ),
    rule!(
        "R-red-doublestar-red",
        None,
        "alpha 2, beta 26",
        "double star with all edges red",
        |_| fixed(2, 26)(Params::default()),
        colored::red_double_star_red
    ),
    rule!(
        "R-red-star:apart",
        None,
        "alpha 3, beta 37",
        "red star whose two leaves share no neighbor",
        |_| fixed(3, 37)(Params::default()),
        colored::red_star_apart
    ),
    rule!(
        "R-red-star:common",
        None,
        "alpha 4, beta 50",
        "red star whose three leaves share one neighbor",
        |_| fixed(4, 50)(Params::default()),
        colored::red_star_common
    ),
    rule!(
        "R-red-star:triangle",
        None,
        "alpha 4, beta 49",
        "red star whose leaves pairwise share distinct neighbors",
        |_| fixed(4, 49)(Params::default()),
        colored::red_star_triangle
    ),
    rule!(
        "R-red-red-green-star",
        None,
        "alpha 1, beta 12",
        "vertex with two red edges and one green edge",
        |_| fixed(1, 12)(Params::default()),
        colored::red_red_green_star
    ),
    rule!(
        "R-star:black-black-green",
        None,
        "alpha 1, beta 12",
        "vertex with one green edge and two black edges ending at black star centers",
        |_| fixed(1, 12)(Params::default()),
        colored::black_black_green_star
    ),
    rule!(
        "R-star:red-black-green",
        None,
        "alpha 1, beta 12",
        "vertex with one red, one green and one black edge ending at a black star center",
        |_| fixed(1, 12)(Params::default()),
        colored::red_black_green_star
    ),
    rule!(
        "R-gbr-triangle",
        None,
        "alpha l+2, beta 14l+24",
        "triangle with a green, a black and a short red edge",
        |p| up_to(p.ell, 1).map(|l| Contract {
            alpha: l as u64 + 2,
            beta: 14 * l as u64 + 24
        }),
        colored::gbr_triangle
    ),
    rule!(
        "R-no-long-green:red-unmarked",
        None,
        "alpha 3, beta 36",
        "red edge next to an unmarked long green edge",
        |_| fixed(3, 36)(Params::default()),
        colored::long_green_red_unmarked
    ),
    rule!(
        "R-no-long-green:red-mark-near",
        None,
        "alpha 2, beta 25",
        "red edge next to a long green edge marked near the shared end",
        |_| fixed(2, 25)(Params::default()),
        colored::long_green_red_mark_near
    ),
    rule!(
        "R-no-long-green:red-mark-far",
        None,
        "alpha 3, beta 38",
        "red edge next to a long green edge marked away from the shared end",
        |_| fixed(3, 38)(Params::default()),
        colored::long_green_red_mark_far
    ),
    rule!(
        "R-no-long-green:unmarked",
        None,
        "alpha 2, beta 24",
        "unmarked long green edge between black stars",
        |_| fixed(2, 24)(Params::default()),
        colored::long_green_unmarked
    ),
    rule!(
        "R-no-long-green:marked",
        None,
        "alpha 2, beta 25",
        "marked long green edge between black stars",
        |_| fixed(2, 25)(Params::default()),
        colored::long_green_marked
    ),
    rule!(
        "R-gbg-stars:black",
        Girth6NoC7C8,
        "alpha 2, beta 24",
        "green-black-green path whose outer ends touch black star centers, black third edge",
        |_| fixed(2, 24)(Params::default()),
        colored::gbg_stars_black
    ),
    rule!(
        "R-gbg-stars:red",
        Girth6NoC7C8,
        "alpha 3, beta 36",
        "green-black-green path whose outer ends touch black star centers, red third edge",
        |_| fixed(3, 36)(Params::default()),
        colored::gbg_stars_red
    ),
    rule!(
        "R-consecutive-reds",
        None,
        "alpha 2, beta 24",
        "green-black-green path whose inner ends carry red edges",
        |_| fixed(2, 24)(Params::default()),
        colored::consecutive_reds
    ),
    rule!(
        "R-red-adjacent",
        None,
        "alpha 2, beta 24",
        "adjacent vertices carrying distinct short red edges",
        |_| fixed(2, 24)(Params::default()),
        endgame::red_adjacent
    ),
    rule!(
        "R-red-edge:adjacent",
        None,
        "alpha 2, beta 24",
        "short red edge whose end neighborhoods are joined by an edge",
        |_| fixed(2, 24)(Params::default()),
        endgame::red_edge_adjacent
    ),
    rule!(
        "R-red-edge:independent",
        Girth6NoC7C8,
        "alpha 2, beta 24",
        "short red edge with independent end neighborhoods",
        |_| fixed(2, 24)(Params::default()),
        endgame::red_edge_independent
    ),
    rule!(
        "R-6cycle:independent",
        Girth6NoC7C8,
        "alpha 2, beta 24",
        "shortest 6-cycle of cubic vertices with independent boundary",
        |_| fixed(2, 24)(Params::default()),
        endgame::six_cycle_independent
    ),
    rule!(
        "R-6cycle:chord",
        Girth6NoC7C8,
        "alpha 2, beta 26",
        "shortest 6-cycle of cubic vertices whose opposite boundary vertices are adjacent",
        |_| fixed(2, 26)(Params::default()),
        endgame::six_cycle_chord
    ),
    rule!(
        "R-girth-0mod3",
        Girth6NoC7C8,
        "alpha k, beta 12k",
        "shortest cycle of length 3k",
        |p| (p.size >= 3).then(|| Contract {
            alpha: p.size as u64,
            beta: 12 * p.size as u64
        }),
        endgame::girth_0_mod_3
    ),
    rule!(
        "R-girth-2mod3",
        Girth6NoC7C8,
        "alpha k+2, beta 12(k+2)",
        "shortest cycle of length 3k+2",
        |p| (p.size >= 3).then(|| Contract {
            alpha: p.size as u64 + 2,
            beta: 12 * (p.size as u64 + 2)
        }),
        endgame::girth_2_mod_3
    ),
    rule!(
        "R-girth-1mod3",
        Girth6NoC7C8,
        "alpha k+1, beta 12(k+1)",
        "shortest cycle of length 3k+1",
        |p| (p.size >= 3).then(|| Contract {
            alpha: p.size as u64 + 1,
            beta: 12 * (p.size as u64 + 1)
        }),
        endgame::girth_1_mod_3
    ),
    rule!(
        "R-girth-10-final",
        Girth6NoC7C8,
        "alpha 6, beta 72",
        "shortest 10-cycle with two linked pairs of boundary vertices",
        |_| fixed(6, 72)(Params::default()),
        endgame::girth_10_final
    ),
];

#[cfg(test)]
mod tests {
    use super::instances::{max_order, planted_instances};
    use super::*;
    use crate::graph::families::{complete4, cycle, heawood, petersen_generalized, subdivide};
    use crate::solver::mdom_exact;
    use crate::weights::weight;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const SOLVER_BUDGET: u64 = 50_000_000;

    fn tree(n: usize, rng: &mut ChaCha8Rng) -> MarkedGraph {
        let mut g = MarkedGraph::new(1);
        while g.n() < n {
            let open: Vec<VertexId> = g.vertices().filter(|&v| g.degree(v) < 3).collect();
            let at = open[rng.gen_range(0..open.len())];
            let v = g.add_vertex(rng.gen_bool(0.3));
            g.add_edge(at, v).unwrap();
        }
        g
    }

    #[test]
    fn catalog_anchors() {
        let leaf = rule("R-unmarked-leaf").unwrap();
        assert_eq!(leaf.contract(Params::default()), Some(Contract { alpha: 1, beta: 12 }));
        let six = rule("R-2path-6").unwrap();
        assert_eq!(six.contract(Params::default()), Some(Contract { alpha: 2, beta: 25 }));
        assert!(matches!(rule("R-nope"), Err(ReductionError::UnknownRule(_))));
        let ids: BTreeSet<&str> = catalog().iter().map(|r| r.id).collect();
        assert_eq!(ids.len(), catalog().len());
    }

    #[test]
    fn every_contract_pays_twelve_per_dominator() {
        for r in catalog() {
            for ell in 0..=8 {
                for size in 0..=40 {
                    if let Some(c) = r.contract(Params { ell, size }) {
                        assert!(c.beta >= 12 * c.alpha, "{} at ell {ell}, size {size}", r.id);
                    }
                }
            }
        }
    }

    #[test]
    fn unmarked_leaf_on_a_small_tree() {
        let g = MarkedGraph::from_edges(7, &[(0, 1), (1, 2), (1, 3), (3, 4), (3, 5), (5, 6)]).unwrap();
        let r = rule("R-unmarked-leaf").unwrap();
        let m = detect(r, &g).unwrap();
        assert_eq!(m.bindings.get("u"), Some(0));
        assert_eq!(m.bindings.get("v"), Some(1));
        assert_eq!(m.recipe.remove, vec![0, 1]);
        assert_eq!(m.recipe.mark, vec![2, 3]);
        assert_eq!(m.recipe.dominators, vec![1]);
        assert!(detect(r, &petersen_generalized(5, 2)).is_none());
    }

    #[test]
    fn order_three_two_path_in_subdivided_k4() {
        let mut g = complete4();
        let inner = subdivide(&mut g, 0, 1, 3);
        let m = detect(rule("R-2path-3").unwrap(), &g).unwrap();
        assert_eq!(m.recipe.remove, inner);
        assert_eq!(m.recipe.dominators, vec![inner[1]]);
    }

    #[test]
    fn marked_edge_rule_deletes_one_edge() {
        let mut g = MarkedGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        g.set_marked(1, true);
        g.set_marked(2, true);
        let r = rule("R-marked-marked-edge").unwrap();
        let m = detect(r, &g).unwrap();
        let (h, _) = apply(r, &g, &m).unwrap();
        assert_eq!(h.n(), g.n());
        assert_eq!(h.edge_count() + 1, g.edge_count());
        assert!(!h.has_edge(1, 2));
    }

    #[test]
    fn single_leaf_step_adds_one_dominator() {
        let g = MarkedGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let r = rule("R-unmarked-leaf").unwrap();
        let m = detect(r, &g).unwrap();
        let (h, step) = apply(r, &g, &m).unwrap();
        let dh = mdom_exact(&h, SOLVER_BUDGET).unwrap();
        let trace = ReductionTrace { steps: vec![step] };
        let d = replay(&g, &trace, &dh.set).unwrap();
        assert_eq!(d.size, dh.size + 1);
    }

    #[test]
    fn nine_cycle_is_solved_with_three_vertices() {
        let g = cycle(9);
        let (residual, trace) = reduce_default(&g);
        assert_eq!(residual.n(), 0);
        assert_eq!(trace.steps.len(), 1);
        assert_eq!(trace.steps[0].matched.rule, "R-cycle-component");
        let d = replay(&g, &trace, &[]).unwrap();
        assert_eq!(d.size, 3);
        assert!(12 * d.size as u64 <= weight(&g));
    }

    #[test]
    fn short_unmarked_cycles_are_not_solved_by_the_cycle_rule() {
        for n in [3, 4, 5, 7] {
            assert!(detect(rule("R-cycle-component").unwrap(), &cycle(n)).is_none(), "C{n}");
        }
    }

    #[test]
    fn trees_are_emptied_within_the_weight_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=30 {
            for _ in 0..10 {
                let g = tree(n, &mut rng);
                let (d, trace) = solve_by_reduction(&g).expect("trees reduce to nothing");
                assert!(is_md_set(&g, &d.set));
                assert!(12 * d.size as u64 <= weight(&g), "n {n}: {} dominators", d.size);
                assert_eq!(d.size as u64, trace.total_alpha());
            }
        }
    }

    #[test]
    fn petersen_and_heawood_keep_a_residual() {
        for g in [petersen_generalized(5, 2), heawood()] {
            let (residual, trace) = reduce_default(&g);
            assert!(trace.steps.is_empty());
            assert_eq!(residual, g);
        }
    }

    #[test]
    fn cycle_hypotheses_gate_detection() {
        let r = rule("R-6cycle:independent").unwrap();
        let (g, m) = planted_instances(r, 1, 3, 1000).pop().unwrap();
        let with_c7 = g.disjoint_union(&cycle(7));
        assert!(detect(r, &with_c7).is_none());
        assert!(matches!(
            apply(r, &with_c7, &m),
            Err(ReductionError::InvalidMatch { .. })
        ));
        let loop_rule = rule("R-multigraph-loop").unwrap();
        let (g, _) = planted_instances(loop_rule, 1, 3, 1000).pop().unwrap();
        assert!(detect(loop_rule, &g.disjoint_union(&cycle(5))).is_none());
    }

    #[test]
    fn tampered_matches_are_rejected() {
        let g = MarkedGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let r = rule("R-unmarked-leaf").unwrap();
        let mut m = detect(r, &g).unwrap();
        m.recipe.dominators = vec![4];
        assert!(matches!(apply(r, &g, &m), Err(ReductionError::InvalidMatch { .. })));
        let other = rule("R-marked-leaf").unwrap();
        let m = detect(r, &g).unwrap();
        assert!(matches!(apply(other, &g, &m), Err(ReductionError::InvalidMatch { .. })));
    }

    #[test]
    fn replay_rejects_a_bad_residual_set() {
        let g = MarkedGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let r = rule("R-unmarked-leaf").unwrap();
        let m = detect(r, &g).unwrap();
        let (_, step) = apply(r, &g, &m).unwrap();
        let trace = ReductionTrace { steps: vec![step] };
        assert_eq!(replay(&g, &trace, &[]), Err(ReductionError::InvalidResidual));
    }

    #[test]
    fn trace_json_uses_original_ids() {
        let g = MarkedGraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let (_, trace) = reduce_default(&g);
        let json = trace.to_json(g.n());
        let steps = json.as_array().unwrap();
        assert_eq!(steps.len(), trace.steps.len());
        let mut removed: Vec<u64> = steps
            .iter()
            .flat_map(|s| s["removed"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()))
            .collect();
        removed.sort_unstable();
        assert_eq!(removed, vec![0, 1, 2, 3, 4, 5]);
        for s in steps {
            for key in ["rule", "bindings", "removed", "marked", "dominators"] {
                assert!(s.get(key).is_some(), "{key}");
            }
        }
    }

    #[test]
    fn unknown_rule_in_order_is_an_error() {
        assert!(matches!(
            reduce_fixpoint(&cycle(6), &["R-missing"]),
            Err(ReductionError::UnknownRule(_))
        ));
    }

    /// The central soundness check: on planted instances the exact solver
    /// confirms the extension bound, the weight drop meets the claim and
    /// the lifted set dominates.
    #[test]
    fn every_rule_is_sound_on_planted_instances() {
        let mut short = Vec::new();
        for r in catalog() {
            let found = planted_instances(r, 50, 0x5eed ^ r.id.len() as u64, 4000);
            if found.len() < 50 {
                short.push(format!("{}: only {} instances", r.id, found.len()));
            }
            for (g, m) in &found {
                assert!(g.n() <= max_order(r.id));
                let (h, step) = apply(r, g, m).unwrap();
                assert!(
                    weight(g) as i64 - weight(&h) as i64 >= m.beta_claimed as i64,
                    "{}",
                    r.id
                );
                let dg = mdom_exact(g, SOLVER_BUDGET).unwrap();
                let dh = mdom_exact(&h, SOLVER_BUDGET).unwrap();
                assert!(dg.size as u64 <= dh.size as u64 + m.alpha, "{}", r.id);
                let trace = ReductionTrace { steps: vec![step] };
                let lifted = replay(g, &trace, &dh.set).unwrap();
                assert!(is_md_set(g, &lifted.set));
                assert!(lifted.size as u64 <= dh.size as u64 + m.alpha);
            }
        }
        assert!(short.is_empty(), "{short:#?}");
    }
}
