//! Direct products of graphs and the transfer of strong integral labellings.
//!
//! A strong labelling of each factor gives a strong `Z^k`-labelling of the
//! product by pairing coordinates. It is then flattened to `Z` through
//! `(x_1, …, x_k) ↦ Σ x_i M^{i−1}`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::graphs::Graph;
use crate::labelling::{is_strong, verify, Labelling, LabellingError};
use crate::magmas::{MagmaElement, MagmaSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("base {base} is not above twice the coordinate {coordinate}")]
    BaseTooSmall { base: u64, coordinate: i64 },
    #[error("tuple of length {got} does not match arity {arity}")]
    ArityMismatch { got: usize, arity: usize },
    #[error(
        "factor {factor} is not strong: {label} and {double} are both labels, so (u,v) + (u,w) is a \
         label of the product although (u,v) and (u,w) are not adjacent"
    )]
    NotStrong { factor: usize, label: String, double: String },
    #[error("factor {0} is not a valid labelling of its graph")]
    NotAValidLabelling(usize),
    #[error("factor {0} is not an integral labelling of machine-size integers")]
    NotIntegral(usize),
    #[error("no factors given")]
    Empty,
    #[error(transparent)]
    Labelling(#[from] LabellingError),
}

/// `G × H`: vertex `(i, j)` is `i·|H| + j`, adjacent to `(k, l)` exactly when
/// `i ~ k` in `G` and `j ~ l` in `H`.
pub fn direct_product(g: &Graph, h: &Graph) -> Graph {
    let m = h.order();
    let mut out = Graph::empty(g.order() * m);
    for (a, b) in g.edges() {
        for (c, d) in h.edges() {
            out.add_edge(a * m + c, b * m + d);
            out.add_edge(a * m + d, b * m + c);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlattenSpec {
    k: usize,
    base: u64,
}

impl FlattenSpec {
    /// A base for `k`-tuples whose coordinates are at most `max_abs` in
    /// absolute value.
    pub fn new(k: usize, base: u64, max_abs: u64) -> Result<Self, ProductError> {
        if base < 1 || base <= 2 * max_abs {
            return Err(ProductError::BaseTooSmall {
                base,
                coordinate: max_abs as i64,
            });
        }
        Ok(FlattenSpec { k, base })
    }

    /// The smallest base allowed for these tuples.
    pub fn minimal(tuples: &[Vec<i64>]) -> Self {
        let k = tuples.first().map_or(0, Vec::len);
        let base = 2 * max_abs(tuples) + 1;
        FlattenSpec { k, base }
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn base(&self) -> u64 {
        self.base
    }
}

fn max_abs(tuples: &[Vec<i64>]) -> u64 {
    tuples.iter().flatten().map(|x| x.unsigned_abs()).max().unwrap_or(0)
}

pub fn flatten(tuples: &[Vec<i64>], spec: &FlattenSpec) -> Result<Vec<BigInt>, ProductError> {
    let base = BigInt::from(spec.base);
    tuples
        .iter()
        .map(|t| {
            if t.len() != spec.k {
                return Err(ProductError::ArityMismatch {
                    got: t.len(),
                    arity: spec.k,
                });
            }
            let mut acc = BigInt::zero();
            let mut power = BigInt::one();
            for &x in t {
                if 2 * x.unsigned_abs() >= spec.base {
                    return Err(ProductError::BaseTooSmall {
                        base: spec.base,
                        coordinate: x,
                    });
                }
                acc += &power * x;
                power *= &base;
            }
            Ok(acc)
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct ProductLabelling {
    pub graph: Graph,
    /// Coordinate tuples, one per product vertex.
    pub tuples: Vec<Vec<i64>>,
    pub base: u64,
    pub labelling: Labelling,
}

fn small_labels(lab: &Labelling, factor: usize) -> Result<Vec<i64>, ProductError> {
    if *lab.spec() != MagmaSpec::IntAdd || lab.is_relaxed() {
        return Err(ProductError::NotIntegral(factor));
    }
    lab.labels()
        .iter()
        .map(|e| e.as_i64().filter(|v| v.unsigned_abs() < 1 << 40))
        .collect::<Option<Vec<_>>>()
        .ok_or(ProductError::NotIntegral(factor))
}

fn check_factor(g: &Graph, lab: &Labelling, factor: usize) -> Result<Vec<i64>, ProductError> {
    let labels = small_labels(lab, factor)?;
    if !verify(lab, g)?.ok {
        return Err(ProductError::NotAValidLabelling(factor));
    }
    if !is_strong(lab) {
        let u = labels.iter().find(|&&u| labels.contains(&(2 * u))).expect("a doubled label");
        return Err(ProductError::NotStrong {
            factor,
            label: u.to_string(),
            double: (2 * u).to_string(),
        });
    }
    Ok(labels)
}

/// Strong integral labelling of `G_1 × … × G_k` from strong integral
/// labellings of the factors.
///
/// The base is the least `M ≥ 2·max + 1` for which the flattened labels
/// label the product and stay strong. `M = 3·max + 1` always qualifies: a
/// flattened sum then equals a flattened label only if the tuples agree.
pub fn product_labelling_many(factors: &[(&Graph, &Labelling)]) -> Result<ProductLabelling, ProductError> {
    let (first, rest) = factors.split_first().ok_or(ProductError::Empty)?;
    let mut graph = first.0.clone();
    let mut tuples: Vec<Vec<i64>> = check_factor(first.0, first.1, 0)?.into_iter().map(|x| vec![x]).collect();
    for (i, (g, lab)) in rest.iter().enumerate() {
        let labels = check_factor(g, lab, i + 1)?;
        graph = direct_product(&graph, g);
        tuples = tuples
            .iter()
            .flat_map(|t| {
                labels.iter().map(move |&x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    let max = max_abs(&tuples);
    for base in 2 * max + 1..=3 * max + 1 {
        let spec = FlattenSpec::new(factors.len(), base, max)?;
        let flat = flatten(&tuples, &spec)?;
        let lab = Labelling::new(MagmaSpec::IntAdd, flat.into_iter().map(MagmaElement::Int).collect(), false)
            .expect("flatten is injective above twice the maximum");
        if verify(&lab, &graph)?.ok && is_strong(&lab) {
            return Ok(ProductLabelling {
                graph,
                tuples,
                base,
                labelling: lab,
            });
        }
    }
    unreachable!("base 3·max + 1 always yields a strong labelling of the product")
}

pub fn product_labelling(
    g: &Graph,
    lab_g: &Labelling,
    h: &Graph,
    lab_h: &Labelling,
) -> Result<ProductLabelling, ProductError> {
    product_labelling_many(&[(g, lab_g), (h, lab_h)])
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::graphs::{build_family, parse_graph6_lines};
    use crate::search::{solve, Domain, SearchProblem};

    fn fam(s: &str) -> Graph {
        build_family(&s.parse().unwrap()).unwrap()
    }

    fn ints(lab: &Labelling) -> Vec<i64> {
        lab.labels().iter().map(|e| e.as_i64().unwrap()).collect()
    }

    #[test]
    fn products_of_small_graphs() {
        let p = direct_product(&fam("K2"), &fam("K2"));
        assert_eq!((p.order(), p.edge_count()), (4, 2));
        assert!(!p.is_connected());
        let p = direct_product(&fam("C3"), &fam("C3"));
        assert_eq!((p.order(), p.edge_count()), (9, 18));
        assert!(p.is_regular(4));
        assert!(p.is_connected());
        let g = fam("P2+E1");
        let p = direct_product(&g, &g);
        assert_eq!(p.edge_count(), 2);
        assert_eq!(p.components().len(), 7);
    }

    #[test]
    fn flatten_examples() {
        let labs = [-1i64, 3, 2];
        let tuples: Vec<Vec<i64>> = labs.iter().flat_map(|&a| labs.iter().map(move |&b| vec![a, b])).collect();
        let spec = FlattenSpec::new(2, 7, 3).unwrap();
        let flat = flatten(&tuples, &spec).unwrap();
        let expect: Vec<BigInt> = [-8, 20, 13, -4, 24, 17, -5, 23, 16].into_iter().map(BigInt::from).collect();
        assert_eq!(flat, expect);
        assert_eq!(&flat[0] + &flat[4], flat[8]);
        assert_eq!(flatten(&[vec![0, 0, 0]], &FlattenSpec::new(3, 1, 0).unwrap()).unwrap(), vec![BigInt::zero()]);
        assert_eq!(
            FlattenSpec::new(2, 5, 3).unwrap_err(),
            ProductError::BaseTooSmall { base: 5, coordinate: 3 }
        );
        let spec = FlattenSpec::new(2, 5, 2).unwrap();
        assert!(matches!(flatten(&[vec![3, 0]], &spec), Err(ProductError::BaseTooSmall { .. })));
    }

    #[test]
    fn squared_path_with_isolated_vertex() {
        let g = fam("P2+E1");
        let lab = Labelling::integers(&[-1, 3, 2]).unwrap();
        // At the smallest base, −4 + 24 = 20 and −4 + 17 = 13 add spurious
        // edges, and −4 + −4 = −8 breaks strongness.
        let flat7: Vec<i64> = vec![-8, 20, 13, -4, 24, 17, -5, 23, 16];
        let at7 = Labelling::integers(&flat7).unwrap();
        let p = direct_product(&g, &g);
        let v = verify(&at7, &p).unwrap();
        let spurious: Vec<(usize, usize)> = v.spurious_edges.iter().map(|e| (e.u, e.w)).collect();
        assert_eq!(spurious, vec![(3, 4), (3, 5)]);
        assert!(!is_strong(&at7));

        let out = product_labelling(&g, &lab, &g, &lab).unwrap();
        assert_eq!(out.base, 8);
        assert_eq!(ints(&out.labelling), vec![-9, 23, 15, -5, 27, 19, -6, 26, 18]);
        assert!(verify(&out.labelling, &p).unwrap().ok);
        assert!(is_strong(&out.labelling));
    }

    #[test]
    fn product_with_an_isolated_vertex_is_edgeless() {
        let g = fam("P2+E1");
        let lab = Labelling::integers(&[-1, 3, 2]).unwrap();
        let k1 = Graph::empty(1);
        let out = product_labelling(&g, &lab, &k1, &Labelling::integers(&[1]).unwrap()).unwrap();
        assert_eq!(out.graph.edge_count(), 0);
        assert!(verify(&out.labelling, &out.graph).unwrap().ok);
    }

    #[test]
    fn non_strong_factors_are_rejected() {
        let g = fam("P2+E1");
        let lab = Labelling::integers(&[1, 2, 3]).unwrap();
        assert!(verify(&lab, &g).unwrap().ok);
        let err = product_labelling(&g, &lab, &g, &Labelling::integers(&[-1, 3, 2]).unwrap()).unwrap_err();
        assert!(matches!(err, ProductError::NotStrong { factor: 0, .. }));
        let err = product_labelling(&g, &Labelling::integers(&[1, 5, 9]).unwrap(), &g, &lab).unwrap_err();
        assert_eq!(err, ProductError::NotAValidLabelling(0));
    }

    #[test]
    fn threefold_product() {
        let g = fam("P2+E1");
        let lab = Labelling::integers(&[-1, 3, 2]).unwrap();
        let out = product_labelling_many(&[(&g, &lab), (&g, &lab), (&g, &lab)]).unwrap();
        assert_eq!(out.graph.order(), 27);
        assert_eq!(out.tuples[0], vec![-1, -1, -1]);
        assert!(verify(&out.labelling, &out.graph).unwrap().ok);
        assert!(is_strong(&out.labelling));
    }

    #[test]
    fn products_of_searched_strong_labellings() {
        let text = include_str!("../tests/data/graphs4.g6");
        let mut strong = Vec::new();
        for g in parse_graph6_lines(text).unwrap() {
            let p = SearchProblem::new(g.clone(), Domain::IntRadius { r: 6 }).unwrap().strong(true);
            if let Some(l) = solve(&p).found() {
                strong.push((g, l.clone()));
            }
        }
        assert!(strong.len() >= 4);
        for (g, a) in &strong {
            for (h, b) in &strong {
                let out = product_labelling(g, a, h, b).unwrap();
                assert!(verify(&out.labelling, &direct_product(g, h)).unwrap().ok);
                assert!(is_strong(&out.labelling));
                assert!(out.base <= 3 * ints(a).iter().chain(&ints(b)).map(|x| x.unsigned_abs()).max().unwrap() + 1);
            }
        }
    }

    #[test]
    fn weichsel_connectivity() {
        let mut connected = Vec::new();
        for text in [
            include_str!("../tests/data/graphs2.g6"),
            include_str!("../tests/data/graphs3.g6"),
            include_str!("../tests/data/graphs4.g6"),
            include_str!("../tests/data/graphs5.g6"),
        ] {
            connected.extend(parse_graph6_lines(text).unwrap().into_iter().filter(Graph::is_connected));
        }
        assert_eq!(connected.len(), 1 + 2 + 6 + 21);
        for g in &connected {
            for h in &connected {
                let p = direct_product(g, h);
                assert_eq!(p.is_connected(), g.has_odd_cycle() || h.has_odd_cycle(), "{g:?} x {h:?}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn flatten_is_injective_and_additive(
            k in 1usize..4,
            max in 1i64..50,
            raw in proptest::collection::vec(proptest::collection::vec(-1000i64..1000, 3), 2..12),
        ) {
            let tuples: Vec<Vec<i64>> = raw.iter().map(|t| t[..k].iter().map(|x| x % (max + 1)).collect()).collect();
            let spec = FlattenSpec::new(k, 2 * max as u64 + 1, max as u64).unwrap();
            let flat = flatten(&tuples, &spec).unwrap();
            for i in 0..tuples.len() {
                for j in 0..tuples.len() {
                    prop_assert_eq!(tuples[i] == tuples[j], flat[i] == flat[j]);
                    let sum: Vec<i64> = tuples[i].iter().zip(&tuples[j]).map(|(a, b)| a + b).collect();
                    if let Ok(fs) = flatten(&[sum], &spec) {
                        prop_assert_eq!(&fs[0], &(&flat[i] + &flat[j]));
                    }
                }
            }
        }
    }
}
