//! Closed-form candidate labellings.
//!
//! None of these functions checks that its output really induces the
//! intended graph; pair them with [`crate::labelling::verify`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::fib::{fib, fib_params, FibParams};
use crate::labelling::{Labelling, LabellingError};
use crate::magmas::{MagmaElement, MagmaError, MagmaSpec, SetOp};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("parameter {got} is below the minimum {min}")]
    TooSmall { got: u64, min: u64 },
    #[error("parameter {0} is too large for this construction")]
    TooLarge(u64),
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("the group Z_{0} x Z_{0} is too small for distinct labels")]
    DegenerateGroup(u64),
    #[error("a chain of {n} sets needs a universe of at least {} elements", n - 1)]
    UniverseTooSmall { n: usize, universe: u32 },
    #[error("{0} is neither 2^k nor 2^k - 1")]
    NotRepresentable(u64),
    #[error(transparent)]
    Labelling(#[from] LabellingError),
    #[error(transparent)]
    Magma(#[from] MagmaError),
}

fn at_least(got: u64, min: u64) -> Result<(), ConstructError> {
    if got < min {
        Err(ConstructError::TooSmall { got, min })
    } else {
        Ok(())
    }
}

/// `1, 2, −1, 3, −4, 7, …` with `a_k = a_{k−2} − a_{k−1}`, along `P_n`.
pub fn harary_path(n: usize) -> Result<Labelling, ConstructError> {
    at_least(n as u64, 4)?;
    let mut labels = vec![1i64, 2];
    while labels.len() < n {
        let k = labels.len();
        let next = labels[k - 2].checked_sub(labels[k - 1]).ok_or(ConstructError::TooLarge(n as u64))?;
        labels.push(next);
    }
    Ok(Labelling::integers(&labels)?)
}

/// Matching `mP_2` (edges `(2i, 2i+1)`) with labels of absolute value at
/// most `3m − 4`: the runs `2m−2, …, 3m−4` and `−(m−1), …, −(2m−3)` paired
/// so each pair sums to `m − 1`, plus the pair `(m − 1, 2m − 3)`.
pub fn matching_harary_style(m: usize) -> Result<Labelling, ConstructError> {
    at_least(m as u64, 4)?;
    let m = m as i64;
    let mut labels = Vec::new();
    for i in 0..m - 1 {
        labels.push(2 * m - 2 + i);
        labels.push(-(m - 1) - i);
    }
    labels.push(m - 1);
    labels.push(2 * m - 3);
    Ok(Labelling::integers(&labels)?)
}

/// Matching `mP_2` with labels `−1; 1, 3, …, 4m−5; 4m−4`, pairs
/// `(−1, 4m−4)` and `(2i+1, 4m−5−2i)`.
pub fn matching_li(m: usize) -> Result<Labelling, ConstructError> {
    at_least(m as u64, 3)?;
    let m = m as i64;
    let mut labels = vec![-1, 4 * m - 4];
    for i in 0..m - 1 {
        labels.push(2 * i + 1);
        labels.push(4 * m - 5 - 2 * i);
    }
    Ok(Labelling::integers(&labels)?)
}

/// `K̄_n` with labels `−(n−1), …, −⌈n/2⌉` and `⌊n/2⌋, …, n−1`.
pub fn empty_graph(n: usize) -> Result<Labelling, ConstructError> {
    at_least(n as u64, 1)?;
    let n = n as i64;
    let negative = -(n - 1)..=-(n + 1) / 2;
    let positive = n / 2..=n - 1;
    let labels: Vec<i64> = negative.chain(positive).collect();
    Ok(Labelling::integers(&labels)?)
}

/// `K̄_n` for even `n` with the odd labels `±1, ±3, …, ±(n−1)`.
pub fn empty_graph_even_alt(n: usize) -> Result<Labelling, ConstructError> {
    if n % 2 == 1 {
        return Err(ConstructError::InvalidGenerator(format!("{n} is odd")));
    }
    let n = n as i64;
    let labels: Vec<i64> = (-(n - 1)..=n - 1).step_by(2).collect();
    Ok(Labelling::integers(&labels)?)
}

/// `C_4` labelled `a, 3a, 4a, 2a` around the cycle. Needs `a ≠ 0` and
/// `5a = 0`. The unit group works too, read multiplicatively.
pub fn c4_over_abelian(spec: &MagmaSpec, a: &MagmaElement) -> Result<Labelling, ConstructError> {
    let identity = spec
        .identity()
        .ok_or_else(|| ConstructError::InvalidGenerator(format!("{spec} has no identity")))?;
    let times = |k: i64| spec.scale(&BigInt::from(k), a);
    if *a == identity || times(5)? != identity {
        return Err(ConstructError::InvalidGenerator(format!(
            "{} does not have order 5",
            spec.render(a)
        )));
    }
    let labels = [1, 3, 4, 2].iter().map(|&k| times(k)).collect::<Result<Vec<_>, _>>()?;
    Ok(Labelling::new(spec.clone(), labels, false)?)
}

/// A Fibonacci-style candidate for `C_n` together with the two necessary
/// conditions for it to close up.
#[derive(Debug, Clone)]
pub struct FibonacciCycle {
    pub spec: MagmaSpec,
    /// `a_0, a_1, a_0 ⊕ a_1, …` in cycle order (may repeat).
    pub labels: Vec<MagmaElement>,
    pub params: FibParams,
    /// The order of `a_0` divides `δ(n)`.
    pub order_divides_delta: bool,
    /// `d·a_1 = z·a_0`.
    pub d_a1_equals_z_a0: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NecessaryCondition {
    OrderDividesDelta,
    DA1EqualsZA0,
}

impl FibonacciCycle {
    /// Conditions that fail (empty when both hold).
    pub fn violated(&self) -> Vec<NecessaryCondition> {
        let mut out = Vec::new();
        if !self.order_divides_delta {
            out.push(NecessaryCondition::OrderDividesDelta);
        }
        if !self.d_a1_equals_z_a0 {
            out.push(NecessaryCondition::DA1EqualsZA0);
        }
        out
    }

    /// The candidate as a labelling; fails if two labels coincide.
    pub fn labelling(&self) -> Result<Labelling, LabellingError> {
        Labelling::new(self.spec.clone(), self.labels.clone(), false)
    }
}

pub fn fibonacci_cycle(
    spec: &MagmaSpec,
    a0: &MagmaElement,
    a1: &MagmaElement,
    n: usize,
) -> Result<FibonacciCycle, ConstructError> {
    at_least(n as u64, 3)?;
    spec.check(a0)?;
    spec.check(a1)?;
    let mut labels = vec![a0.clone(), a1.clone()];
    while labels.len() < n {
        let k = labels.len();
        labels.push(spec.op(&labels[k - 2], &labels[k - 1])?);
    }
    let params: FibParams = fib_params(n as i64);
    let order = spec
        .order_of(a0)
        .ok_or_else(|| ConstructError::InvalidGenerator(format!("{spec} is not a finite group")))?;
    let order_divides_delta = params.delta.is_multiple_of(&BigInt::from(order));
    let d_a1_equals_z_a0 = spec.scale(&params.d, a1)? == spec.scale(&params.z, a0)?;
    Ok(FibonacciCycle {
        spec: spec.clone(),
        labels,
        params,
        order_divides_delta,
        d_a1_equals_z_a0,
    })
}

/// Candidate for `C_{4ℓ}` over `Z_f × Z_f` with `f = f_{2ℓ}`: vertex `i`
/// gets `(f_i mod f, f_{i−1} mod f)`.
pub fn c4l_theorem_labelling(l: usize) -> Result<Labelling, ConstructError> {
    at_least(l as u64, 1)?;
    if l > 45 {
        return Err(ConstructError::TooLarge(l as u64));
    }
    let f = fib::<BigInt>(2 * l as i64);
    let f_u = f.to_u64().expect("f_90 fits in u64");
    if f_u == 1 {
        return Err(ConstructError::DegenerateGroup(f_u));
    }
    let reduce = |k: i64| fib::<BigInt>(k).mod_floor(&f).to_u64().unwrap();
    let labels = (0..4 * l as i64)
        .map(|i| MagmaElement::Tuple(vec![reduce(i), reduce(i - 1)]))
        .collect();
    Ok(Labelling::new(MagmaSpec::abelian(&[f_u, f_u]), labels, false)?)
}

/// `C_{2k}` over `(P({1..2k}), ∪)`: odd positions `{i}`, even positions
/// `{i, i+1, k+i}` (indices of the `A`s taken cyclically).
pub fn union_cycle(k: usize) -> Result<Labelling, ConstructError> {
    at_least(k as u64, 2)?;
    if 2 * k > crate::magmas::MAX_SET_UNIVERSE as usize {
        return Err(ConstructError::TooLarge(k as u64));
    }
    let mut labels = Vec::with_capacity(2 * k);
    for i in 1..=k as u32 {
        let next = i % k as u32 + 1;
        labels.push(MagmaElement::subset(&[i]));
        labels.push(MagmaElement::subset(&[i, next, k as u32 + i]));
    }
    Ok(Labelling::new(MagmaSpec::set(2 * k as u32, SetOp::Union), labels, false)?)
}

/// `K_n` over `(P(S), ∪)` by the chain `∅ ⊂ {1} ⊂ {1,2} ⊂ …`.
pub fn union_clique(n: usize, universe: u32) -> Result<Labelling, ConstructError> {
    if n > universe as usize + 1 {
        return Err(ConstructError::UniverseTooSmall { n, universe });
    }
    let labels = (0..n as u32).map(|k| MagmaElement::Subset((1u64 << k) - 1)).collect();
    Ok(Labelling::new(MagmaSpec::set(universe, SetOp::Union), labels, false)?)
}

/// `K_m` over `(P(S), Δ)`: every subset of a `k`-set when `m = 2^k`, every
/// non-empty one when `m = 2^k − 1`.
pub fn boolean_clique(m: u64) -> Result<Labelling, ConstructError> {
    let (k, skip_empty) = if m == 0 {
        return Err(ConstructError::NotRepresentable(m));
    } else if m.is_power_of_two() {
        (m.trailing_zeros(), false)
    } else if (m + 1).is_power_of_two() {
        ((m + 1).trailing_zeros(), true)
    } else {
        return Err(ConstructError::NotRepresentable(m));
    };
    if k > 20 {
        return Err(ConstructError::TooLarge(m));
    }
    let labels = (skip_empty as u64..1 << k).map(MagmaElement::Subset).collect();
    Ok(Labelling::new(MagmaSpec::set(k, SetOp::SymDiff), labels, false)?)
}

/// `K_n` as a relaxed labelling: every vertex gets 0.
pub fn relaxed_clique(n: usize) -> Labelling {
    Labelling::new(MagmaSpec::IntAdd, vec![MagmaElement::Int(BigInt::zero()); n], true)
        .expect("zero is an integer")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{build_family, FamilySpec, Graph};
    use crate::labelling::{induced_graph, is_strong, verify};

    fn ints(lab: &Labelling) -> Vec<i64> {
        lab.labels().iter().map(|l| l.as_i64().unwrap()).collect()
    }

    fn family(spec: FamilySpec) -> Graph {
        build_family(&spec).unwrap()
    }

    // Adjacency straight from the definition, with no shared code.
    fn integer_graph(labels: &[i64]) -> Graph {
        let n = labels.len();
        let mut g = Graph::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                if labels.contains(&(labels[i] + labels[j])) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    #[test]
    fn harary_path_values() {
        assert_eq!(ints(&harary_path(6).unwrap()), vec![1, 2, -1, 3, -4, 7]);
        assert_eq!(ints(&harary_path(4).unwrap()), vec![1, 2, -1, 3]);
        assert!(verify(&harary_path(10).unwrap(), &family(FamilySpec::Path(10))).unwrap().ok);
        assert!(matches!(harary_path(3), Err(ConstructError::TooSmall { .. })));
    }

    #[test]
    fn harary_style_matching_labels() {
        let mut labels = ints(&matching_harary_style(4).unwrap());
        labels.sort_unstable();
        assert_eq!(labels, vec![-5, -4, -3, 3, 5, 6, 7, 8]);
        let lab = matching_harary_style(5).unwrap();
        assert_eq!(ints(&lab).iter().map(|v| v.abs()).max(), Some(11));
    }

    #[test]
    fn harary_style_matching_has_a_chord_at_four() {
        // 8 + (−3) = 5 is a label, joining two different matching edges.
        let g = integer_graph(&ints(&matching_harary_style(4).unwrap()));
        assert_ne!(g, family(FamilySpec::Matching(4)));
        assert!(g.has_edge(1, 4));
    }

    #[test]
    fn li_matching() {
        let lab = matching_li(3).unwrap();
        let mut sorted = ints(&lab);
        sorted.sort_unstable();
        assert_eq!(sorted, vec![-1, 1, 3, 5, 7, 8]);
        let mut four = ints(&matching_li(4).unwrap());
        four.sort_unstable();
        assert_eq!(four, vec![-1, 1, 3, 5, 7, 9, 11, 12]);
        for m in 3..=20 {
            let labels = ints(&matching_li(m).unwrap());
            assert_eq!(integer_graph(&labels), family(FamilySpec::Matching(m)), "m={m}");
            let range = labels.iter().max().unwrap() - labels.iter().min().unwrap();
            assert_eq!(range, 4 * m as i64 - 3);
        }
    }

    #[test]
    fn empty_graphs() {
        let mut five = ints(&empty_graph(5).unwrap());
        five.sort_unstable();
        assert_eq!(five, vec![-4, -3, 2, 3, 4]);
        assert_eq!(ints(&empty_graph(1).unwrap()), vec![0]);
        assert_eq!(ints(&empty_graph_even_alt(4).unwrap()), vec![-3, -1, 1, 3]);
        for n in 1..=50 {
            let labels = ints(&empty_graph(n).unwrap());
            assert_eq!(integer_graph(&labels), Graph::empty(n));
            assert_eq!(labels.iter().map(|v| v.abs()).max(), Some(n as i64 - 1));
            if n % 2 == 0 {
                let alt = ints(&empty_graph_even_alt(n).unwrap());
                assert_eq!(integer_graph(&alt), Graph::empty(n));
            }
        }
    }

    #[test]
    fn four_cycles_over_groups() {
        let c4 = family(FamilySpec::Cycle(4));
        let z5 = c4_over_abelian(&MagmaSpec::mod_add(5), &MagmaElement::Residue(1)).unwrap();
        assert_eq!(z5.render(), "1,3,4,2");
        assert!(verify(&z5, &c4).unwrap().ok);
        let z10 = c4_over_abelian(&MagmaSpec::mod_add(10), &MagmaElement::Residue(2)).unwrap();
        assert_eq!(z10.render(), "2,6,8,4");
        assert!(verify(&z10, &c4).unwrap().ok);
        for a in 0..7 {
            assert!(matches!(
                c4_over_abelian(&MagmaSpec::mod_add(7), &MagmaElement::Residue(a)),
                Err(ConstructError::InvalidGenerator(_))
            ));
        }
        let units = c4_over_abelian(&MagmaSpec::ModMulUnits { modulus: 11 }, &MagmaElement::Residue(3)).unwrap();
        assert_eq!(units.render(), "3,5,4,9");
        assert!(verify(&units, &c4).unwrap().ok);
    }

    #[test]
    fn fibonacci_cycles() {
        let spec = MagmaSpec::mod_add(682);
        let fc = fibonacci_cycle(&spec, &MagmaElement::Residue(1), &MagmaElement::Residue(81), 15).unwrap();
        let want = [1, 81, 82, 163, 245, 408, 653, 379, 350, 47, 397, 444, 159, 603, 80];
        assert_eq!(fc.labels, want.map(MagmaElement::Residue).to_vec());
        assert!(fc.violated().is_empty());
        assert!(verify(&fc.labelling().unwrap(), &family(FamilySpec::Cycle(15))).unwrap().ok);

        let spec = MagmaSpec::mod_add(29);
        let fc = fibonacci_cycle(&spec, &MagmaElement::Residue(1), &MagmaElement::Residue(24), 7).unwrap();
        assert_eq!(fc.labelling().unwrap().render(), "1,24,25,20,16,7,23");
        assert!(verify(&fc.labelling().unwrap(), &family(FamilySpec::Cycle(7))).unwrap().ok);

        let spec = MagmaSpec::abelian(&[4, 4]);
        let t = |a, b| MagmaElement::Tuple(vec![a, b]);
        let fc = fibonacci_cycle(&spec, &t(1, 2), &t(0, 1), 6).unwrap();
        assert!(fc.violated().is_empty());
        assert!(verify(&fc.labelling().unwrap(), &family(FamilySpec::Cycle(6))).unwrap().ok);
    }

    #[test]
    fn fibonacci_conditions_can_fail() {
        // In Z_10, δ(5) = 11 and 1 has order 10.
        let spec = MagmaSpec::mod_add(10);
        let fc = fibonacci_cycle(&spec, &MagmaElement::Residue(1), &MagmaElement::Residue(3), 5).unwrap();
        assert!(fc.violated().contains(&NecessaryCondition::OrderDividesDelta));
        assert_eq!(fc.labels.len(), 5);
    }

    #[test]
    fn c4l_candidates() {
        assert!(matches!(c4l_theorem_labelling(1), Err(ConstructError::DegenerateGroup(1))));
        let lab = c4l_theorem_labelling(2).unwrap();
        assert_eq!(lab.render(), "(0,1),(1,0),(1,1),(2,1),(0,2),(2,0),(2,2),(1,2)");
        assert_eq!(c4l_theorem_labelling(3).unwrap().spec(), &MagmaSpec::abelian(&[8, 8]));
    }

    #[test]
    fn union_cycles() {
        let lab = union_cycle(2).unwrap();
        assert_eq!(lab.render(), "{1},{1,2,3},{2},{1,2,4}");
        for k in 2..=8 {
            assert!(verify(&union_cycle(k).unwrap(), &family(FamilySpec::Cycle(2 * k))).unwrap().ok, "k={k}");
        }
    }

    #[test]
    fn cliques() {
        assert_eq!(union_clique(3, 2).unwrap().render(), "{},{1},{1,2}");
        for s in 0..=5u32 {
            for n in 1..=s as usize + 1 {
                assert!(verify(&union_clique(n, s).unwrap(), &family(FamilySpec::Complete(n))).unwrap().ok);
            }
            assert!(matches!(
                union_clique(s as usize + 2, s),
                Err(ConstructError::UniverseTooSmall { .. })
            ));
        }
        for m in [1, 2, 3, 4, 7, 8, 15, 16] {
            let lab = boolean_clique(m).unwrap();
            assert!(verify(&lab, &family(FamilySpec::Complete(m as usize))).unwrap().ok, "m={m}");
        }
        assert_eq!(boolean_clique(4).unwrap().spec(), &MagmaSpec::set(2, SetOp::SymDiff));
        assert_eq!(boolean_clique(7).unwrap().len(), 7);
        assert!(matches!(boolean_clique(5), Err(ConstructError::NotRepresentable(5))));
        let k10 = relaxed_clique(10);
        assert_eq!(induced_graph(&k10), family(FamilySpec::Complete(10)));
        assert!(!is_strong(&k10));
    }
}
