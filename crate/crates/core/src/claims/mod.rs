//! Mechanical re-checks of the published claims about sum graphs.
//!
//! Each claim has an id, the command line that reproduces it, an expected
//! verdict and a check. `REPORT` claims record what the check found without
//! affecting the overall status.

mod registry;

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::graphs::{emit_graph6, Graph};
use crate::labelling::{induced_graph, labelling_to_json, verify, Labelling};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Expected {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "REPORT")]
    Report,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Actual {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "REPORT-ONLY")]
    ReportOnly,
}

impl std::fmt::Display for Expected {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Expected::Pass => "PASS",
            Expected::Fail => "FAIL",
            Expected::Report => "REPORT",
        })
    }
}

impl std::fmt::Display for Actual {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Actual::Pass => "PASS",
            Actual::Fail => "FAIL",
            Actual::ReportOnly => "REPORT-ONLY",
        })
    }
}

#[derive(Debug, Clone)]
pub enum Witness {
    /// A labelling of `graph`.
    Labelling { graph: Graph, labelling: Labelling },
    /// `labels[u] ⊕ labels[w]` (in some order) equals `labels[via]`, but
    /// `{u, w}` is not an edge of `graph`.
    Chord {
        graph: Graph,
        labelling: Labelling,
        u: usize,
        w: usize,
        via: usize,
    },
    /// `{u, w}` is an edge of `graph` that the labelling does not induce.
    MissingEdge {
        graph: Graph,
        labelling: Labelling,
        u: usize,
        w: usize,
    },
    Data(Value),
}

impl Witness {
    /// The first discrepancy between a labelling and its target, or the
    /// labelling itself when there is none.
    pub fn from_verdict(graph: &Graph, labelling: &Labelling) -> Witness {
        let v = verify(labelling, graph).expect("witness sizes agree");
        if let Some(e) = v.spurious_edges.first() {
            return Witness::Chord {
                graph: graph.clone(),
                labelling: labelling.clone(),
                u: e.u,
                w: e.w,
                via: e.witness_vertex,
            };
        }
        if let Some(&(u, w)) = v.missing_edges.first() {
            return Witness::MissingEdge {
                graph: graph.clone(),
                labelling: labelling.clone(),
                u,
                w,
            };
        }
        Witness::Labelling {
            graph: graph.clone(),
            labelling: labelling.clone(),
        }
    }

    /// Re-derives the witness from scratch.
    pub fn recheck(&self) -> bool {
        match self {
            Witness::Labelling { graph, labelling } => verify(labelling, graph).is_ok_and(|v| v.ok),
            Witness::Chord {
                graph,
                labelling,
                u,
                w,
                via,
            } => {
                let (l, spec) = (labelling.labels(), labelling.spec());
                if u == w || [*u, *w, *via].iter().any(|&x| x >= l.len()) || l.len() != graph.order() {
                    return false;
                }
                let hits = spec.op(&l[*u], &l[*w]).is_ok_and(|s| s == l[*via])
                    || spec.op(&l[*w], &l[*u]).is_ok_and(|s| s == l[*via]);
                hits && !graph.has_edge(*u, *w) && induced_graph(labelling).has_edge(*u, *w)
            }
            Witness::MissingEdge {
                graph,
                labelling,
                u,
                w,
            } => {
                *u < graph.order()
                    && *w < graph.order()
                    && labelling.len() == graph.order()
                    && graph.has_edge(*u, *w)
                    && !induced_graph(labelling).has_edge(*u, *w)
            }
            Witness::Data(_) => true,
        }
    }

    /// Whether this witness pins down a concrete chord or missing edge.
    pub fn is_edge_witness(&self) -> bool {
        matches!(self, Witness::Chord { .. } | Witness::MissingEdge { .. })
    }

    pub fn to_json(&self) -> Value {
        let g6 = |g: &Graph| emit_graph6(g).unwrap_or_default();
        match self {
            Witness::Labelling { graph, labelling } => json!({
                "kind": "labelling",
                "graph6": g6(graph),
                "labelling": labelling_to_json(labelling, None),
            }),
            Witness::Chord {
                graph,
                labelling,
                u,
                w,
                via,
            } => json!({
                "kind": "chord",
                "graph6": g6(graph),
                "labelling": labelling_to_json(labelling, None),
                "u": u, "w": w, "via": via,
                "sum": labelling.spec().render(&labelling.labels()[*via]),
            }),
            Witness::MissingEdge {
                graph,
                labelling,
                u,
                w,
            } => json!({
                "kind": "missing_edge",
                "graph6": g6(graph),
                "labelling": labelling_to_json(labelling, None),
                "u": u, "w": w,
            }),
            Witness::Data(v) => json!({ "kind": "data", "data": v }),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ClaimRecord {
    pub id: String,
    pub command: String,
    pub expected: Expected,
    pub actual: Actual,
    pub detail: String,
    pub witness: Option<Witness>,
    pub seconds: f64,
}

impl ClaimRecord {
    /// An expected-PASS claim that did not pass.
    pub fn is_gating_failure(&self) -> bool {
        self.expected == Expected::Pass && self.actual != Actual::Pass
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "command": self.command,
            "expected": self.expected,
            "actual": self.actual,
            "detail": self.detail,
            "witness": self.witness.as_ref().map(Witness::to_json),
            "seconds": self.seconds,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClaimError {
    #[error("no claim matches {0:?}")]
    UnknownClaimId(String),
}

/// What a check found.
pub(crate) struct Outcome {
    pub actual: Actual,
    pub detail: String,
    pub witness: Option<Witness>,
}

impl Outcome {
    pub fn verdict(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            actual: if pass { Actual::Pass } else { Actual::Fail },
            detail: detail.into(),
            witness: None,
        }
    }

    pub fn report(detail: impl Into<String>, data: Value) -> Self {
        Outcome {
            actual: Actual::ReportOnly,
            detail: detail.into(),
            witness: Some(Witness::Data(data)),
        }
    }

    pub fn with(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }
}

pub(crate) struct Claim {
    pub id: &'static str,
    pub command: String,
    pub expected: Expected,
    /// Long-running; only run on request.
    pub extended: bool,
    pub check: Box<dyn Fn() -> Outcome + Send + Sync>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimInfo {
    pub id: &'static str,
    pub command: String,
    pub expected: Expected,
    pub extended: bool,
}

/// All registered claims, sorted by id.
pub fn list_claims() -> Vec<ClaimInfo> {
    registry::claims()
        .into_iter()
        .map(|c| ClaimInfo {
            id: c.id,
            command: c.command,
            expected: c.expected,
            extended: c.extended,
        })
        .collect()
}

fn glob_match(pattern: &str, text: &str) -> bool {
    let Some((head, rest)) = pattern.split_once('*') else {
        return pattern == text;
    };
    let Some(tail) = text.strip_prefix(head) else {
        return false;
    };
    (0..=tail.len()).any(|i| tail.is_char_boundary(i) && glob_match(rest, &tail[i..]))
}

/// Whether `pattern` selects `id`: an exact id, a glob with `*`, or a prefix
/// ending just before a `-` or `.` of the id.
pub fn matches(pattern: &str, id: &str) -> bool {
    if pattern.contains('*') {
        return glob_match(pattern, id);
    }
    id == pattern || id.strip_prefix(pattern).is_some_and(|r| r.starts_with(['-', '.']))
}

/// Runs the selected claims (all standard ones without a filter) in parallel
/// and returns them sorted by id. Extended claims run when `extended` is set
/// or when the filter names them exactly.
pub fn run_claims(filter: Option<&str>, extended: bool) -> Result<Vec<ClaimRecord>, ClaimError> {
    let selected: Vec<Claim> = registry::claims()
        .into_iter()
        .filter(|c| match filter {
            None => extended || !c.extended,
            Some(p) => matches(p, c.id) && (extended || !c.extended || p == c.id),
        })
        .collect();
    if selected.is_empty() {
        return Err(ClaimError::UnknownClaimId(filter.unwrap_or("").to_string()));
    }
    let mut records: Vec<ClaimRecord> = selected
        .into_par_iter()
        .map(|c| {
            let start = Instant::now();
            let out = (c.check)();
            ClaimRecord {
                id: c.id.to_string(),
                command: c.command,
                expected: c.expected,
                actual: out.actual,
                detail: out.detail,
                witness: out.witness,
                seconds: start.elapsed().as_secs_f64(),
            }
        })
        .collect();
    records.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(records)
}

/// Overall status: no expected-PASS claim failed.
pub fn all_gating_passed(records: &[ClaimRecord]) -> bool {
    records.iter().all(|r| !r.is_gating_failure())
}
