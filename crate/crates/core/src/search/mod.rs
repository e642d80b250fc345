//! Bounded labelling search.
//!
//! Every negative answer here is relative to a bound: a radius, a maximum
//! label, a modulus cap, or a finite magma. The only unbounded statement
//! available is the modulus bound for connected mod sum graphs reported by
//! [`mod_sum_sweep`].

mod engine;

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graphs::Graph;
use crate::labelling::{is_strong, verify, Labelling};
use crate::magmas::{MagmaElement, MagmaSpec};
use engine::{Config, DomainTable, EngineResult};

/// Largest label domain handled; the operation table is quadratic in it.
pub const MAX_DOMAIN: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("invalid search domain: {0}")]
    InvalidDomain(String),
    #[error("corpus mixes graph orders {0} and {1}")]
    MixedOrders(usize, usize),
    #[error("gcd {gcd} of the labels does not divide the modulus {modulus}")]
    GcdDoesNotDivideModulus { gcd: u64, modulus: u64 },
    #[error("expected a labelling over Z_m, got {0}")]
    NotModular(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Domain {
    /// Integers in `[−r, r]`.
    IntRadius { r: u64 },
    /// Integers in `[1, max]`.
    NatMax { max: u64 },
    /// All of `Z_m`.
    Mod { m: u64 },
    /// The whole carrier of a finite magma.
    FiniteMagma { spec: MagmaSpec },
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::IntRadius { r } => write!(f, "radius {r}"),
            Domain::NatMax { max } => write!(f, "labels 1..={max}"),
            Domain::Mod { m } => write!(f, "Z_{m}"),
            Domain::FiniteMagma { spec } => write!(f, "{spec}"),
        }
    }
}

/// `int:R`, `nat:B`, `mod:M` or `magma:SPEC` (any finite magma spec).
impl FromStr for Domain {
    type Err = SearchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SearchError::InvalidDomain(s.to_string());
        let (kind, arg) = s.trim().split_once(':').ok_or_else(bad)?;
        let num = || arg.trim().parse::<u64>().map_err(|_| bad());
        let d = match kind.to_ascii_lowercase().as_str() {
            "int" | "radius" => Domain::IntRadius { r: num()? },
            "nat" => Domain::NatMax { max: num()? },
            "mod" => Domain::Mod { m: num()? },
            "magma" => Domain::FiniteMagma {
                spec: arg.parse().map_err(|e: crate::magmas::MagmaError| SearchError::InvalidDomain(e.to_string()))?,
            },
            _ => return Err(bad()),
        };
        d.validate()?;
        Ok(d)
    }
}

impl Domain {
    fn spec(&self) -> MagmaSpec {
        match self {
            Domain::IntRadius { .. } => MagmaSpec::IntAdd,
            Domain::NatMax { .. } => MagmaSpec::NatAdd,
            Domain::Mod { m } => MagmaSpec::mod_add(*m),
            Domain::FiniteMagma { spec } => spec.clone(),
        }
    }

    fn validate(&self) -> Result<(), SearchError> {
        let bad = |m: String| Err(SearchError::InvalidDomain(m));
        let size = match self {
            Domain::IntRadius { r } => r.saturating_mul(2).saturating_add(1),
            Domain::NatMax { max } if *max < 1 => return bad("maximum label must be at least 1".into()),
            Domain::NatMax { max } => *max,
            Domain::Mod { m } if *m < 2 => return bad("modulus must be at least 2".into()),
            Domain::Mod { m } => *m,
            Domain::FiniteMagma { spec } => {
                spec.validate().map_err(|e| SearchError::InvalidDomain(e.to_string()))?;
                spec.carrier_size().map_err(|e| SearchError::InvalidDomain(e.to_string()))?
            }
        };
        if size > MAX_DOMAIN {
            return bad(format!("{size} candidate labels exceed the limit of {MAX_DOMAIN}"));
        }
        Ok(())
    }

    /// Candidate labels in search order: by absolute value for integers,
    /// positive before negative.
    fn elements(&self) -> Vec<MagmaElement> {
        match self {
            Domain::IntRadius { r } => {
                let mut v = vec![MagmaElement::int(0)];
                for k in 1..=*r as i64 {
                    v.push(MagmaElement::int(k));
                    v.push(MagmaElement::int(-k));
                }
                v
            }
            Domain::NatMax { max } => (1..=*max as i64).map(MagmaElement::int).collect(),
            Domain::Mod { m } => (0..*m).map(MagmaElement::Residue).collect(),
            Domain::FiniteMagma { spec } => spec.enumerate_carrier().expect("validated finite").collect(),
        }
    }

    fn table(&self, nonzero: bool) -> (Vec<MagmaElement>, DomainTable) {
        let mut elems = self.elements();
        if nonzero {
            elems.retain(|e| !matches!(e, MagmaElement::Int(v) if v.is_zero()) && *e != MagmaElement::Residue(0));
        }
        let size = elems.len();
        let mut op = vec![None; size * size];
        match self {
            Domain::IntRadius { .. } | Domain::NatMax { .. } => {
                let vals: Vec<i64> = elems.iter().map(|e| e.as_i64().expect("small ints")).collect();
                let index = |x: i64| vals.iter().position(|&v| v == x);
                for a in 0..size {
                    for b in 0..size {
                        op[a * size + b] = index(vals[a] + vals[b]).map(|i| i as u32);
                    }
                }
            }
            Domain::Mod { .. } | Domain::FiniteMagma { .. } => {
                let spec = self.spec();
                let index: std::collections::HashMap<&MagmaElement, usize> =
                    elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
                for a in 0..size {
                    for b in 0..size {
                        let s = spec.op_unchecked(&elems[a], &elems[b]);
                        op[a * size + b] = index.get(&s).map(|&i| i as u32);
                    }
                }
            }
        }
        let first = match self {
            // Negation is an automorphism of (Z, +); 0 is its own image.
            Domain::IntRadius { .. } => Some(elems.iter().map(|e| e.as_i64().is_some_and(|v| v >= 0)).collect()),
            // Every residue is a unit multiple of its gcd with m.
            Domain::Mod { m } => Some(
                elems
                    .iter()
                    .map(|e| matches!(e, MagmaElement::Residue(a) if *a == 0 || m % a == 0))
                    .collect(),
            ),
            _ => None,
        };
        let commutative = match self {
            Domain::FiniteMagma { spec } => spec.is_commutative(),
            _ => true,
        };
        (elems, DomainTable { size, op, commutative, first })
    }
}

#[derive(Debug, Clone)]
pub struct SearchProblem {
    graph: Graph,
    domain: Domain,
    relaxed: bool,
    strong: bool,
    budget: Option<u64>,
    prune: bool,
    nonzero: bool,
}

impl SearchProblem {
    pub fn new(graph: Graph, domain: Domain) -> Result<Self, SearchError> {
        domain.validate()?;
        Ok(SearchProblem {
            graph,
            domain,
            relaxed: false,
            strong: false,
            budget: None,
            prune: true,
            nonzero: false,
        })
    }

    pub fn relaxed(mut self, relaxed: bool) -> Self {
        self.relaxed = relaxed;
        self
    }

    pub fn strong(mut self, strong: bool) -> Self {
        self.strong = strong;
        self
    }

    /// Leaves 0 (the identity of `Z` or `Z_m`) out of the domain.
    pub fn nonzero(mut self, nonzero: bool) -> Self {
        self.nonzero = nonzero;
        self
    }

    /// Stop after this many search nodes, reporting [`SearchResult::Aborted`].
    pub fn budget(mut self, budget: Option<u64>) -> Self {
        self.budget = budget;
        self
    }

    /// Disables propagation and symmetry reduction; only the leaf check
    /// remains. Meant for cross-checking.
    pub fn without_pruning(mut self) -> Self {
        self.prune = false;
        self
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }
}

#[derive(Debug, Clone)]
pub enum SearchResult {
    Found(Labelling),
    ExhaustedWithinBound(Domain),
    Aborted,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub result: SearchResult,
    pub nodes_expanded: u64,
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&Labelling> {
        match &self.result {
            SearchResult::Found(l) => Some(l),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        self.found().is_some()
    }

    pub fn is_exhausted(&self) -> bool {
        matches!(self.result, SearchResult::ExhaustedWithinBound(_))
    }
}

pub fn solve(p: &SearchProblem) -> SearchOutcome {
    let (elems, table) = p.domain.table(p.nonzero);
    let cfg = Config {
        relaxed: p.relaxed,
        strong: p.strong,
        prune: p.prune,
        budget: p.budget,
    };
    let (res, nodes) = engine::run(&p.graph, &table, &cfg);
    let result = match res {
        EngineResult::Found(idx) => {
            let labels = idx.into_iter().map(|i| elems[i].clone()).collect();
            let lab = Labelling::new(p.domain.spec(), labels, p.relaxed).expect("domain elements are valid labels");
            assert!(
                verify(&lab, &p.graph).expect("same order").ok && (!p.strong || is_strong(&lab)),
                "search produced an invalid witness {}",
                lab.render()
            );
            SearchResult::Found(lab)
        }
        EngineResult::Exhausted => SearchResult::ExhaustedWithinBound(p.domain.clone()),
        EngineResult::Aborted => SearchResult::Aborted,
    };
    SearchOutcome {
        result,
        nodes_expanded: nodes,
    }
}

#[derive(Debug, Clone)]
pub enum Bounded<T> {
    Value(T, Labelling),
    AboveCap,
}

impl<T: Copy> Bounded<T> {
    pub fn value(&self) -> Option<T> {
        match self {
            Bounded::Value(v, _) => Some(*v),
            Bounded::AboveCap => None,
        }
    }

    pub fn witness(&self) -> Option<&Labelling> {
        match self {
            Bounded::Value(_, l) => Some(l),
            Bounded::AboveCap => None,
        }
    }
}

/// Least `r ≤ cap` admitting an integral labelling with labels in `[−r, r]`.
pub fn radius(g: &Graph, cap: u64) -> Bounded<u64> {
    radius_with(g, cap, false)
}

pub fn radius_with(g: &Graph, cap: u64, relaxed: bool) -> Bounded<u64> {
    for r in 0..=cap {
        let p = SearchProblem::new(g.clone(), Domain::IntRadius { r })
            .expect("radius within limits")
            .relaxed(relaxed);
        if let SearchResult::Found(l) = solve(&p).result {
            return Bounded::Value(r, l);
        }
    }
    Bounded::AboveCap
}

/// Least `k ≤ max_isolated` such that `G ∪ kK_1` has a labelling in `[1, max]`.
pub fn sum_number_bounded(g: &Graph, max_isolated: usize, max: u64) -> Bounded<usize> {
    for k in 0..=max_isolated {
        let p = SearchProblem::new(g.with_isolated(k), Domain::NatMax { max }).expect("maximum within limits");
        if let SearchResult::Found(l) = solve(&p).result {
            return Bounded::Value(k, l);
        }
    }
    Bounded::AboveCap
}

/// `2·3^{n−1}`: a connected graph on `n ≥ 3` vertices that is a `Z_m`-graph
/// for some `m` is one for some `m` up to this bound.
pub fn mod_sum_bound(n: usize) -> BigUint {
    BigUint::from(2u32) * BigUint::from(3u32).pow(n.saturating_sub(1) as u32)
}

#[derive(Debug, Clone)]
pub struct ModSweep {
    /// Smallest modulus found, with its witness.
    pub found: Option<(u64, Labelling)>,
    pub m_cap: u64,
    pub theorem_bound: BigUint,
    /// Whether the sweep settles the question outright: a witness was found,
    /// or the graph is connected with `n ≥ 3`, the labelling is not relaxed
    /// and the cap reaches the theorem bound.
    pub conclusive: bool,
    pub nodes_expanded: u64,
}

pub fn mod_sum_sweep(g: &Graph, m_cap: u64, relaxed: bool) -> ModSweep {
    let n = g.order();
    let theorem_bound = mod_sum_bound(n);
    let mut nodes = 0;
    let mut found = None;
    for m in 2..=m_cap.min(MAX_DOMAIN) {
        if !relaxed && (m as usize) < n {
            continue;
        }
        let p = SearchProblem::new(g.clone(), Domain::Mod { m })
            .expect("modulus within limits")
            .relaxed(relaxed);
        let out = solve(&p);
        nodes += out.nodes_expanded;
        if let SearchResult::Found(l) = out.result {
            found = Some((m, l));
            break;
        }
    }
    let conclusive = found.is_some()
        || (!relaxed && n >= 3 && g.is_connected() && BigUint::from(m_cap.min(MAX_DOMAIN)) >= theorem_bound);
    ModSweep {
        found,
        m_cap,
        theorem_bound,
        conclusive,
        nodes_expanded: nodes,
    }
}

/// Divides labels and modulus by the gcd of the labels.
pub fn gcd_reduce_mod_labelling(lab: &Labelling) -> Result<Labelling, SearchError> {
    let MagmaSpec::ModAdd { modulus } = *lab.spec() else {
        return Err(SearchError::NotModular(lab.spec().to_string()));
    };
    let residues: Vec<u64> = lab
        .labels()
        .iter()
        .map(|e| match e {
            MagmaElement::Residue(r) => *r,
            _ => unreachable!("labels belong to the spec"),
        })
        .collect();
    let d = residues.iter().fold(0u64, |acc, &r| acc.gcd(&r));
    if d <= 1 {
        return Ok(lab.clone());
    }
    if modulus % d != 0 {
        return Err(SearchError::GcdDoesNotDivideModulus { gcd: d, modulus });
    }
    let reduced = residues.iter().map(|r| MagmaElement::Residue(r / d)).collect();
    Ok(Labelling::new(MagmaSpec::mod_add(modulus / d), reduced, lab.is_relaxed()).expect("division keeps labels distinct"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusCount {
    pub n: usize,
    pub total: usize,
    pub isg: usize,
    /// Present when relaxed labellings were counted.
    pub risg: Option<usize>,
    /// Radius bound used for every graph.
    pub bound: u64,
    pub zero_allowed: bool,
}

/// Counts graphs admitting an integral labelling (and, with `relaxed`, a
/// relaxed one) of radius at most `bound`, with non-zero labels.
///
/// Existence within the bound is monotone in the radius, so each graph is
/// decided by one search at the bound.
pub fn count_corpus(graphs: &[Graph], relaxed: bool, bound: u64) -> Result<CorpusCount, SearchError> {
    count_corpus_with(graphs, relaxed, bound, false)
}

pub fn count_corpus_with(
    graphs: &[Graph],
    relaxed: bool,
    bound: u64,
    zero_allowed: bool,
) -> Result<CorpusCount, SearchError> {
    let n = graphs.first().map_or(0, Graph::order);
    if let Some(g) = graphs.iter().find(|g| g.order() != n) {
        return Err(SearchError::MixedOrders(n, g.order()));
    }
    Domain::IntRadius { r: bound }.validate()?;
    let decide = |g: &Graph, rx: bool| {
        let p = SearchProblem::new(g.clone(), Domain::IntRadius { r: bound })
            .expect("validated")
            .relaxed(rx)
            .nonzero(!zero_allowed);
        solve(&p).is_found()
    };
    let rows: Vec<(bool, bool)> = graphs
        .par_iter()
        .map(|g| {
            let isg = decide(g, false);
            (isg, relaxed && (isg || decide(g, true)))
        })
        .collect();
    Ok(CorpusCount {
        n,
        total: graphs.len(),
        isg: rows.iter().filter(|r| r.0).count(),
        risg: relaxed.then(|| rows.iter().filter(|r| r.1).count()),
        bound,
        zero_allowed,
    })
}

/// Labels as integers, for integral labellings.
pub fn int_labels(lab: &Labelling) -> Option<Vec<BigInt>> {
    lab.labels().iter().map(|e| e.as_int().cloned()).collect()
}
