//! Turning command-line arguments into graphs and labellings.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::Args;
use serde_json::Value;
use sumgraph::fixtures::{fixture_by_id, Fixture};
use sumgraph::graphs::{parse_graph6, parse_graph6_lines};
use sumgraph::labelling::labelling_from_json;
use sumgraph::{build_family, FamilySpec, Graph, Labelling, MagmaElement, MagmaSpec};

#[derive(Args, Debug, Clone, Default)]
pub struct GraphArgs {
    /// Named family: C5, P6, K4, K3,3, E3, M4, Q4, Petersen, Prism, C4+E3
    #[arg(long)]
    pub graph: Option<String>,
    /// A graph in graph6
    #[arg(long, conflicts_with = "graph")]
    pub g6: Option<String>,
}

impl GraphArgs {
    pub fn resolve(&self) -> Result<Option<Graph>> {
        match (&self.graph, &self.g6) {
            (Some(name), _) => Ok(Some(family(name)?)),
            (None, Some(text)) => {
                Ok(Some(parse_graph6(text.trim().as_bytes()).with_context(|| format!("bad graph6 {text:?}"))?))
            }
            (None, None) => Ok(None),
        }
    }

    pub fn require(&self) -> Result<Graph> {
        self.resolve()?.context("give a graph with --graph or --g6")
    }
}

pub fn family(name: &str) -> Result<Graph> {
    let spec: FamilySpec = name.parse().with_context(|| format!("unknown graph {name:?}"))?;
    Ok(build_family(&spec)?)
}

pub fn magma(text: &str) -> Result<MagmaSpec> {
    text.parse().with_context(|| format!("bad magma {text:?}"))
}

pub fn labels(spec: &MagmaSpec, text: &str, relaxed: bool) -> Result<Labelling> {
    let elems = spec.parse_labels(text).with_context(|| format!("bad labels {text:?} for {spec}"))?;
    Ok(Labelling::new(spec.clone(), elems, relaxed)?)
}

pub fn fixture(id: &str) -> Result<Fixture> {
    match fixture_by_id(id) {
        Some(f) => Ok(f),
        None => bail!("no fixture {id:?}; `sumgraph verify --list-fixtures` shows them"),
    }
}

/// A labelling file `{magma, relaxed, labels, graph?}`, or any `--json`
/// output carrying one under `labelling` (with the graph under `graph6`).
pub fn labelling_value(value: &Value) -> Result<(Labelling, Option<Graph>)> {
    let Some(inner) = value.get("labelling") else {
        return Ok(labelling_from_json(value)?);
    };
    let (lab, g) = labelling_from_json(inner)?;
    let g = match (g, value.get("graph6").and_then(Value::as_str)) {
        (Some(g), _) => Some(g),
        (None, Some(text)) => Some(parse_graph6(text.as_bytes()).with_context(|| format!("bad graph6 {text:?}"))?),
        (None, None) => None,
    };
    Ok((lab, g))
}

pub fn labelling_file(path: &Path) -> Result<(Labelling, Option<Graph>)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    labelling_value(&value)
}

pub fn graph6_file(path: &Path) -> Result<Vec<Graph>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph6_lines(&text).map_err(|(line, e)| anyhow::anyhow!("{}:{}: {e}", path.display(), line))
}

/// One element; tuple coordinates may be given without parentheses (`1,0`).
pub fn element(spec: &MagmaSpec, text: &str) -> Result<MagmaElement> {
    let text = text.trim();
    let wrapped;
    let text = if matches!(spec, MagmaSpec::AbelianProduct { .. }) && !text.starts_with('(') {
        wrapped = format!("({text})");
        &wrapped
    } else {
        text
    };
    spec.parse_element(text).with_context(|| format!("bad element {text:?} for {spec}"))
}
