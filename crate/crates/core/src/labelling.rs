//! Labellings of graph vertices by magma elements, and the graph they induce.
//!
//! Two distinct vertices are adjacent when `a ⊕ b` or `b ⊕ a` is one of the
//! labels. For relaxed labellings the labels form a multiset; membership is
//! tested against the set of distinct labels, so two vertices sharing a label
//! `ℓ` are adjacent exactly when `ℓ ⊕ ℓ` is a label.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::graphs::Graph;
use crate::magmas::{MagmaElement, MagmaError, MagmaSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabellingError {
    #[error(transparent)]
    Magma(#[from] MagmaError),
    #[error("label {0} is used twice in a non-relaxed labelling")]
    DuplicateLabel(String),
    #[error("{labels} labels for a graph with {vertices} vertices")]
    LengthMismatch { labels: usize, vertices: usize },
    #[error("vertex map is not a bijection")]
    NotBijective,
    #[error("sum isomorphism is only defined for non-relaxed labellings")]
    RelaxedNotSupported,
    #[error("malformed labelling file: {0}")]
    Format(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labelling {
    spec: MagmaSpec,
    labels: Vec<MagmaElement>,
    relaxed: bool,
}

impl Labelling {
    pub fn new(spec: MagmaSpec, labels: Vec<MagmaElement>, relaxed: bool) -> Result<Self, LabellingError> {
        spec.validate()?;
        for l in &labels {
            spec.check(l)?;
        }
        if !relaxed {
            let mut seen = HashSet::new();
            if let Some(dup) = labels.iter().find(|l| !seen.insert(*l)) {
                return Err(LabellingError::DuplicateLabel(spec.render(dup)));
            }
        }
        Ok(Labelling { spec, labels, relaxed })
    }

    /// Integer labels over `(Z, +)`.
    pub fn integers(labels: &[i64]) -> Result<Self, LabellingError> {
        Self::new(MagmaSpec::IntAdd, labels.iter().map(|&v| v.into()).collect(), false)
    }

    /// Residues over `Z_m`.
    pub fn residues(modulus: u64, labels: &[u64]) -> Result<Self, LabellingError> {
        Self::new(
            MagmaSpec::mod_add(modulus),
            labels.iter().map(|&r| MagmaElement::Residue(r)).collect(),
            false,
        )
    }

    pub fn spec(&self) -> &MagmaSpec {
        &self.spec
    }

    pub fn labels(&self) -> &[MagmaElement] {
        &self.labels
    }

    pub fn is_relaxed(&self) -> bool {
        self.relaxed
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Renders the labels as a comma-separated list.
    pub fn render(&self) -> String {
        self.labels.iter().map(|l| self.spec.render(l)).collect::<Vec<_>>().join(",")
    }

    /// Distinct labels, each mapped to the first vertex carrying it.
    fn support(&self) -> HashMap<&MagmaElement, usize> {
        let mut map = HashMap::with_capacity(self.labels.len());
        for (v, l) in self.labels.iter().enumerate() {
            map.entry(l).or_insert(v);
        }
        map
    }
}

/// The first label found among `a ⊕ b` and `b ⊕ a`, with a vertex carrying it.
fn witness(
    spec: &MagmaSpec,
    support: &HashMap<&MagmaElement, usize>,
    a: &MagmaElement,
    b: &MagmaElement,
) -> Option<(usize, MagmaElement)> {
    let ab = spec.op_unchecked(a, b);
    if let Some(&v) = support.get(&ab) {
        return Some((v, ab));
    }
    if spec.is_commutative() {
        return None;
    }
    let ba = spec.op_unchecked(b, a);
    support.get(&ba).map(|&v| (v, ba))
}

pub fn induced_graph(lab: &Labelling) -> Graph {
    let n = lab.len();
    let support = lab.support();
    let mut g = Graph::empty(n);
    for u in 0..n {
        for w in u + 1..n {
            if witness(&lab.spec, &support, &lab.labels[u], &lab.labels[w]).is_some() {
                g.add_edge(u, w);
            }
        }
    }
    g
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpuriousEdge {
    pub u: usize,
    pub w: usize,
    /// A vertex whose label equals the offending sum.
    pub witness_vertex: usize,
    pub witness_label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub ok: bool,
    pub missing_edges: Vec<(usize, usize)>,
    pub spurious_edges: Vec<SpuriousEdge>,
}

/// Compares the induced graph with `target` under the identity vertex map.
pub fn verify(lab: &Labelling, target: &Graph) -> Result<Verdict, LabellingError> {
    let n = target.order();
    if lab.len() != n {
        return Err(LabellingError::LengthMismatch {
            labels: lab.len(),
            vertices: n,
        });
    }
    let support = lab.support();
    let mut missing_edges = Vec::new();
    let mut spurious_edges = Vec::new();
    for u in 0..n {
        for w in u + 1..n {
            let found = witness(&lab.spec, &support, &lab.labels[u], &lab.labels[w]);
            match (found, target.has_edge(u, w)) {
                (None, true) => missing_edges.push((u, w)),
                (Some((witness_vertex, l)), false) => spurious_edges.push(SpuriousEdge {
                    u,
                    w,
                    witness_vertex,
                    witness_label: lab.spec.render(&l),
                }),
                _ => {}
            }
        }
    }
    Ok(Verdict {
        ok: missing_edges.is_empty() && spurious_edges.is_empty(),
        missing_edges,
        spurious_edges,
    })
}

/// No label `ℓ` has `ℓ ⊕ ℓ` among the labels.
pub fn is_strong(lab: &Labelling) -> bool {
    let support = lab.support();
    support.keys().all(|l| !support.contains_key(&lab.spec.op_unchecked(l, l)))
}

/// Checks that `f` (vertex `i` of `lab_v` goes to vertex `f[i]` of `lab_w`)
/// is a sum isomorphism: it carries the induced edges onto the induced edges,
/// and `f(a ⊕ b) = f(a) ⊙ f(b)` whenever `a ⊕ b` is itself a label.
pub fn check_sum_iso(lab_v: &Labelling, lab_w: &Labelling, f: &[usize]) -> Result<bool, LabellingError> {
    if lab_v.relaxed || lab_w.relaxed {
        return Err(LabellingError::RelaxedNotSupported);
    }
    let n = lab_v.len();
    if lab_w.len() != n || f.len() != n {
        return Err(LabellingError::NotBijective);
    }
    let mut hit = vec![false; n];
    for &t in f {
        if t >= n || std::mem::replace(&mut hit[t], true) {
            return Err(LabellingError::NotBijective);
        }
    }
    let support_v = lab_v.support();
    for i in 0..n {
        for j in 0..n {
            let sum = lab_v.spec.op_unchecked(&lab_v.labels[i], &lab_v.labels[j]);
            if let Some(&k) = support_v.get(&sum) {
                let image = lab_w.spec.op_unchecked(&lab_w.labels[f[i]], &lab_w.labels[f[j]]);
                if image != lab_w.labels[f[k]] {
                    return Ok(false);
                }
            }
        }
    }
    let (gv, gw) = (induced_graph(lab_v), induced_graph(lab_w));
    Ok((0..n).all(|i| (i + 1..n).all(|j| gv.has_edge(i, j) == gw.has_edge(f[i], f[j]))))
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    n: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct LabellingFile {
    magma: MagmaSpec,
    #[serde(default)]
    relaxed: bool,
    labels: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    graph: Option<GraphFile>,
}

/// Serialises to `{magma, relaxed, labels, graph?}`. Integers too large for
/// JSON numbers are written as decimal strings; subsets as member lists.
pub fn labelling_to_json(lab: &Labelling, graph: Option<&Graph>) -> Value {
    let file = LabellingFile {
        magma: lab.spec.clone(),
        relaxed: lab.relaxed,
        labels: lab.labels.iter().map(|l| lab.spec.element_to_json(l)).collect(),
        graph: graph.map(|g| GraphFile {
            n: g.order(),
            edges: g.edges().collect(),
        }),
    };
    serde_json::to_value(file).expect("labelling file serialises")
}

pub fn labelling_from_json(v: &Value) -> Result<(Labelling, Option<Graph>), LabellingError> {
    let file: LabellingFile =
        serde_json::from_value(v.clone()).map_err(|e| LabellingError::Format(e.to_string()))?;
    let labels = file
        .labels
        .iter()
        .map(|l| file.magma.element_from_json(l))
        .collect::<Result<Vec<_>, _>>()?;
    let graph = match file.graph {
        Some(GraphFile { n, edges }) => {
            if edges.iter().any(|&(i, j)| i >= n || j >= n) {
                return Err(LabellingError::Format("edge endpoint out of range".into()));
            }
            Some(Graph::from_edges(n, edges))
        }
        None => None,
    };
    Ok((Labelling::new(file.magma, labels, file.relaxed)?, graph))
}
