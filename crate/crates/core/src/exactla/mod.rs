//! Exact linear algebra over the integers and rationals, applied to the
//! linear systems a labelling satisfies.
//!
//! An integer labelling of `G` satisfies `x_i + x_j − x_k = 0` for every
//! edge `{i, j}` whose sum is the label of `k`. The solution space of these
//! equations is the labelling's kernel; integer points in it that induce no
//! extra edges are again labellings of `G`.

mod matrix;
mod random;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use matrix::{normalise, primitive, Matrix};
pub use random::{kernel_mod_p, random_cycle_search, CycleSolution, RandomCycleSystem};

pub type IntMatrix = Matrix<BigInt>;

use crate::graphs::Graph;
use crate::labelling::{verify, Labelling};
use crate::magmas::MagmaSpec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("not a valid labelling: {0}")]
    NotAValidLabelling(String),
    #[error("edge {0:?} has more than one vertex carrying its sum")]
    AmbiguousWitness((usize, usize)),
    #[error("no verified solution within {0} samples")]
    NoSolutionWithinBudget(usize),
    #[error("values exceed the supported integer range")]
    Overflow,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// One equation `x_i + x_j − x_k = 0` per edge `{i, j}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabellingSystem {
    pub n: usize,
    pub rows: Vec<(usize, usize, usize)>,
}

impl LabellingSystem {
    pub fn matrix(&self) -> Matrix<BigInt> {
        let mut m = Matrix::zeros(self.rows.len(), self.n);
        for (r, &(i, j, k)) in self.rows.iter().enumerate() {
            m[(r, i)] += 1;
            m[(r, j)] += 1;
            m[(r, k)] -= 1;
        }
        m
    }
}

#[derive(Debug, Clone)]
pub struct LabellingKernel {
    pub system: LabellingSystem,
    /// Primitive integer basis of the rational kernel.
    pub basis: Vec<Vec<BigInt>>,
    /// The input labels written in `basis`.
    pub coordinates: Vec<Ratio<BigInt>>,
}

fn integer_labels(lab: &Labelling) -> Result<Vec<BigInt>, LinAlgError> {
    if !matches!(lab.spec(), MagmaSpec::IntAdd | MagmaSpec::NatAdd) {
        return Err(LinAlgError::NotAValidLabelling(format!("{} is not an integer magma", lab.spec())));
    }
    Ok(lab.labels().iter().map(|l| l.as_int().expect("integer magma").clone()).collect())
}

pub fn labelling_system(g: &Graph, lab: &Labelling) -> Result<LabellingSystem, LinAlgError> {
    let labels = integer_labels(lab)?;
    let verdict = verify(lab, g).map_err(|e| LinAlgError::NotAValidLabelling(e.to_string()))?;
    if !verdict.ok {
        return Err(LinAlgError::NotAValidLabelling(format!(
            "{} missing and {} spurious edges",
            verdict.missing_edges.len(),
            verdict.spurious_edges.len()
        )));
    }
    let mut rows = Vec::with_capacity(g.edge_count());
    for (i, j) in g.edges() {
        let sum = &labels[i] + &labels[j];
        let mut carriers = labels.iter().enumerate().filter(|(_, l)| **l == sum).map(|(k, _)| k);
        let k = carriers.next().expect("verified edge has a witness");
        if carriers.next().is_some() {
            return Err(LinAlgError::AmbiguousWitness((i, j)));
        }
        rows.push((i, j, k));
    }
    Ok(LabellingSystem { n: g.order(), rows })
}

/// Coordinates of `v` in the span of `basis`, if it lies there.
pub fn span_coordinates(basis: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<Ratio<BigInt>>> {
    // Columns of the system are the basis vectors.
    let rows = (0..v.len()).map(|i| basis.iter().map(|b| b[i].clone()).collect()).collect();
    let m = Matrix::from_rows(rows);
    if basis.is_empty() {
        return v.iter().all(Zero::is_zero).then(Vec::new);
    }
    m.solve(v)
}

pub fn labelling_kernel(g: &Graph, lab: &Labelling) -> Result<LabellingKernel, LinAlgError> {
    let system = labelling_system(g, lab)?;
    let basis = system.matrix().rational_nullspace();
    let labels = integer_labels(lab)?;
    let coordinates = span_coordinates(&basis, &labels).expect("a labelling solves its own system");
    Ok(LabellingKernel {
        system,
        basis,
        coordinates,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PrimitiveLabelling {
    pub coefficients: Vec<i64>,
    pub labels: Vec<i64>,
}

impl PrimitiveLabelling {
    pub fn labelling(&self) -> Labelling {
        Labelling::integers(&self.labels).expect("labels are distinct")
    }
}

fn gcd_all(v: &[i128]) -> i128 {
    v.iter().fold(0i128, |g, x| g.gcd(x))
}

/// Checks the candidate `v` induces exactly `g`, with distinct entries.
fn induces(g: &Graph, v: &[i128], sorted: &mut Vec<i128>) -> bool {
    sorted.clear();
    sorted.extend_from_slice(v);
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    let n = v.len();
    (0..n).all(|i| (i + 1..n).all(|j| sorted.binary_search(&(v[i] + v[j])).is_ok() == g.has_edge(i, j)))
}

/// Integer combinations `Σ c_k b_k` with every `|c_k| ≤ bound` that are
/// primitive labellings of `g`: distinct coprime entries, first entry
/// positive, inducing exactly `g`. Ordered by coefficient vector.
///
/// Each result is confirmed by [`verify`] before being returned.
pub fn enumerate_primitive_labellings(
    g: &Graph,
    basis: &[Vec<BigInt>],
    bound: i64,
) -> Result<Vec<PrimitiveLabelling>, LinAlgError> {
    if bound < 1 {
        return Err(LinAlgError::InvalidParameter("coefficient bound must be at least 1".into()));
    }
    let n = g.order();
    if basis.iter().any(|b| b.len() != n) {
        return Err(LinAlgError::InvalidParameter("basis vectors must have one entry per vertex".into()));
    }
    let small: Vec<Vec<i128>> = basis
        .iter()
        .map(|b| b.iter().map(|x| x.to_i64().map(i128::from)).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()
        .ok_or(LinAlgError::Overflow)?;
    let d = small.len();
    if d == 0 {
        return Ok(Vec::new());
    }
    let side = (2 * bound + 1) as u64;
    let total = side.checked_pow(d as u32 - 1).ok_or(LinAlgError::Overflow)?;
    let found: Vec<PrimitiveLabelling> = (-bound..=bound)
        .into_par_iter()
        .flat_map_iter(|c0| {
            let mut coeffs = vec![-bound; d];
            coeffs[0] = c0;
            let mut v = vec![0i128; n];
            let mut scratch = Vec::with_capacity(n);
            let mut out = Vec::new();
            for _ in 0..total {
                for (i, slot) in v.iter_mut().enumerate() {
                    *slot = small.iter().zip(&coeffs).map(|(b, &c)| b[i] * c as i128).sum();
                }
                let leading_positive = v.iter().find(|x| **x != 0).is_some_and(|x| *x > 0);
                if leading_positive && gcd_all(&v) == 1 && induces(g, &v, &mut scratch) {
                    if let Some(labels) = v.iter().map(|x| i64::try_from(*x).ok()).collect::<Option<Vec<_>>>() {
                        out.push(PrimitiveLabelling {
                            coefficients: coeffs.clone(),
                            labels,
                        });
                    }
                }
                // Odometer over the remaining coefficients.
                for c in coeffs[1..].iter_mut().rev() {
                    if *c < bound {
                        *c += 1;
                        break;
                    }
                    *c = -bound;
                }
            }
            out
        })
        .collect();
    Ok(found
        .into_par_iter()
        .filter(|p| verify(&p.labelling(), g).is_ok_and(|v| v.ok))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{build_family, FamilySpec};

    fn bigs(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn single_edge_system() {
        let g = Graph::from_edges(3, [(0, 1)]);
        let lab = Labelling::integers(&[-1, 3, 2]).unwrap();
        let k = labelling_kernel(&g, &lab).unwrap();
        assert_eq!(k.system.rows, vec![(0, 1, 2)]);
        assert_eq!(k.basis.len(), 2);
    }

    #[test]
    fn edgeless_system() {
        let g = Graph::empty(4);
        let lab = Labelling::integers(&[-3, -2, 2, 3]).unwrap();
        let k = labelling_kernel(&g, &lab).unwrap();
        assert!(k.system.rows.is_empty());
        assert_eq!(k.basis.len(), 4);
    }

    #[test]
    fn invalid_labellings_are_rejected() {
        let c4 = build_family(&FamilySpec::Cycle(4)).unwrap();
        let lab = Labelling::integers(&[1, 2, 3, 4]).unwrap();
        assert!(matches!(labelling_kernel(&c4, &lab), Err(LinAlgError::NotAValidLabelling(_))));
        let lab = Labelling::residues(5, &[1, 3, 4, 2]).unwrap();
        assert!(matches!(labelling_kernel(&c4, &lab), Err(LinAlgError::NotAValidLabelling(_))));
    }

    #[test]
    fn ambiguous_witness_in_relaxed_labelling() {
        // 0 + 0 = 0 is carried by all three vertices.
        let k3 = build_family(&FamilySpec::Complete(3)).unwrap();
        let lab = crate::constructors::relaxed_clique(3);
        assert_eq!(labelling_system(&k3, &lab), Err(LinAlgError::AmbiguousWitness((0, 1))));
    }

    #[test]
    fn labels_lie_in_their_kernel() {
        let p6 = build_family(&FamilySpec::Path(6)).unwrap();
        let lab = crate::constructors::harary_path(6).unwrap();
        let k = labelling_kernel(&p6, &lab).unwrap();
        let m = k.system.matrix();
        for b in &k.basis {
            assert!(m.mul_vec(b).iter().all(Zero::is_zero));
        }
        // Recombine exactly.
        let back: Vec<Ratio<BigInt>> = (0..6)
            .map(|i| {
                k.basis
                    .iter()
                    .zip(&k.coordinates)
                    .map(|(b, c)| c * Ratio::from_integer(b[i].clone()))
                    .sum()
            })
            .collect();
        assert_eq!(back, bigs(&[1, 2, -1, 3, -4, 7]).into_iter().map(Ratio::from_integer).collect::<Vec<_>>());
    }

    #[test]
    fn primitive_scan_on_three_isolated_vertices() {
        let g = Graph::empty(3);
        let basis: Vec<Vec<BigInt>> = (0..3).map(|i| bigs(&[(i == 0) as i64, (i == 1) as i64, (i == 2) as i64])).collect();
        // With entries in {−1, 0, 1} every distinct triple contains 0, and
        // 0 + x = x joins two vertices.
        assert!(enumerate_primitive_labellings(&g, &basis, 1).unwrap().is_empty());
        let found = enumerate_primitive_labellings(&g, &basis, 3).unwrap();
        assert!(!found.is_empty());
        for p in &found {
            let mut s = p.labels.clone();
            s.sort_unstable();
            s.dedup();
            assert_eq!(s.len(), 3);
            assert!(verify(&p.labelling(), &g).unwrap().ok);
        }
        assert!(found.iter().all(|p| p.labels != vec![1, 1, 0]));
        // (1, 0, −1) has 1 + (−1) = 0.
        assert!(found.iter().all(|p| p.labels != vec![1, 0, -1]));
    }
}
