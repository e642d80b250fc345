//! Randomised search for cyclic labellings over prime fields.
//!
//! Choose for each `i` a target `g(i) ∉ {i, i+1}` with `g(i) ≠ g(i+1)`
//! (indices mod `n`), and look for `x` with `x_i + x_{i+1} = x_{g(i)}`. The
//! integer system has a non-trivial solution modulo every prime dividing its
//! determinant; such a solution is kept if it labels `C_n` exactly.

use std::collections::BTreeSet;

use log::debug;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{LinAlgError, Matrix};
use crate::graphs::{build_family, FamilySpec};
use crate::labelling::{verify, Labelling};

/// Largest cycle for which determinants are computed in `i128`. Entries are
/// in `{−1, 0, 1, 2}` with at most three non-zeros per row, so every minor is
/// below `√6^n` by Hadamard's bound.
const MAX_N: usize = 90;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RandomCycleSystem {
    pub n: usize,
    pub g: Vec<usize>,
}

impl RandomCycleSystem {
    pub fn new(g: Vec<usize>) -> Result<Self, LinAlgError> {
        let n = g.len();
        if !Self::is_valid_map(&g) {
            return Err(LinAlgError::InvalidParameter(format!("target map {g:?} breaks the cycle constraints")));
        }
        Ok(RandomCycleSystem { n, g })
    }

    pub fn is_valid_map(g: &[usize]) -> bool {
        let n = g.len();
        (0..n).all(|i| g[i] < n && g[i] != i && g[i] != (i + 1) % n && g[i] != g[(i + 1) % n])
    }

    /// Uniform over valid maps, by rejection.
    fn sample(n: usize, rng: &mut impl Rng) -> Self {
        loop {
            let g: Vec<usize> = (0..n)
                .map(|i| {
                    // Uniform over Z_n \ {i, i+1}.
                    let mut t = rng.gen_range(0..n - 2);
                    for excluded in [i, (i + 1) % n].into_iter().collect::<BTreeSet<_>>() {
                        if t >= excluded {
                            t += 1;
                        }
                    }
                    t
                })
                .collect();
            if Self::is_valid_map(&g) {
                return RandomCycleSystem { n, g };
            }
        }
    }

    pub fn matrix(&self) -> Matrix<i128> {
        let mut m = Matrix::zeros(self.n, self.n);
        for i in 0..self.n {
            m[(i, i)] += 1;
            m[(i, (i + 1) % self.n)] += 1;
            m[(i, self.g[i])] -= 1;
        }
        m
    }
}

/// A non-zero kernel vector of `m` over `Z_p`, scaled so its first non-zero
/// entry is 1, or `None` if the kernel is trivial.
pub fn kernel_mod_p(m: &Matrix<i128>, p: u64) -> Option<Vec<u64>> {
    let (rows, cols) = (m.rows(), m.cols());
    let pp = p as u128;
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % pp) as u64;
    let inv = |a: u64| {
        // Fermat: a^(p−2).
        let (mut base, mut e, mut acc) = (a, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };
    let mut a: Vec<Vec<u64>> = (0..rows)
        .map(|i| m.row(i).iter().map(|x| x.rem_euclid(p as i128) as u64).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, pr);
        let s = inv(a[r][c]);
        for x in a[r].iter_mut() {
            *x = mul(*x, s);
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..cols {
                    a[i][j] = (a[i][j] + p - mul(f, a[r][j])) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut v = vec![0u64; cols];
    v[free] = 1;
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = (p - a[row][free]) % p;
    }
    let lead = *v.iter().find(|&&x| x != 0)?;
    let s = inv(lead);
    Some(v.into_iter().map(|x| mul(x, s)).collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct CycleSolution {
    pub prime: u64,
    pub system: RandomCycleSystem,
    /// Residues around the cycle.
    pub labels: Vec<u64>,
}

impl CycleSolution {
    pub fn labelling(&self) -> Labelling {
        Labelling::residues(self.prime, &self.labels).expect("solutions have distinct labels")
    }
}

/// Samples `budget` random systems for `C_n` and returns every verified
/// labelling over `Z_p` with prime `p ≤ prime_bound`, deduplicated, in order
/// of discovery. Deterministic for a fixed seed.
pub fn random_cycle_search(
    n: usize,
    seed: u64,
    prime_bound: u64,
    budget: usize,
) -> Result<Vec<CycleSolution>, LinAlgError> {
    if !(5..=MAX_N).contains(&n) {
        return Err(LinAlgError::InvalidParameter(format!("cycle length must be in 5..={MAX_N}")));
    }
    if prime_bound < 2 {
        return Err(LinAlgError::InvalidParameter("prime bound must be at least 2".into()));
    }
    let cycle = build_family(&FamilySpec::Cycle(n)).expect("n >= 5");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for _ in 0..budget {
        let system = RandomCycleSystem::sample(n, &mut rng);
        let m = system.matrix();
        let det = m.determinant().expect("square");
        if det == 0 {
            continue;
        }
        let factors = num_prime::nt_funcs::factorize128(det.unsigned_abs());
        for (&p, _) in factors.iter().filter(|(&p, _)| p <= prime_bound as u128) {
            let p = p as u64;
            let Some(labels) = kernel_mod_p(&m, p) else { continue };
            let Ok(lab) = Labelling::residues(p, &labels) else { continue };
            if verify(&lab, &cycle).is_ok_and(|v| v.ok) && seen.insert((p, labels.clone())) {
                debug!("C_{n} over Z_{p}: {}", lab.render());
                out.push(CycleSolution {
                    prime: p,
                    system: system.clone(),
                    labels,
                });
            }
        }
    }
    if out.is_empty() {
        return Err(LinAlgError::NoSolutionWithinBudget(budget));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_constraints() {
        assert!(!RandomCycleSystem::is_valid_map(&[1, 2, 3, 4, 0]));
        assert!(RandomCycleSystem::new(vec![1, 2, 3, 4, 0]).is_err());
        assert!(RandomCycleSystem::new(vec![7, 3, 4, 5, 6, 7, 8, 2, 1]).is_ok());
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..200 {
            let s = RandomCycleSystem::sample(9, &mut rng);
            assert!(RandomCycleSystem::is_valid_map(&s.g));
        }
    }

    #[test]
    fn the_z53_system() {
        let s = RandomCycleSystem::new(vec![7, 3, 4, 5, 6, 7, 8, 2, 1]).unwrap();
        let m = s.matrix();
        assert_eq!(m.determinant().unwrap(), 53);
        let v = kernel_mod_p(&m, 53).unwrap();
        assert_eq!(v, vec![1, 8, 16, 24, 40, 11, 51, 9, 7]);
        assert!(kernel_mod_p(&m, 7).is_none());
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let s = RandomCycleSystem::sample(8, &mut rng);
            let m = s.matrix();
            let det = m.determinant().unwrap();
            for p in [2u64, 3, 5, 7, 11, 13] {
                match kernel_mod_p(&m, p) {
                    Some(v) => {
                        assert_eq!(det.rem_euclid(p as i128), 0);
                        for r in 0..m.rows() {
                            let dot: i128 = m.row(r).iter().zip(&v).map(|(a, &b)| a * b as i128).sum();
                            assert_eq!(dot.rem_euclid(p as i128), 0);
                        }
                    }
                    None => assert_ne!(det.rem_euclid(p as i128), 0),
                }
            }
        }
    }

    #[test]
    fn search_results_verify() {
        let sols = random_cycle_search(9, 2024, 1000, 20_000).unwrap();
        let c9 = build_family(&FamilySpec::Cycle(9)).unwrap();
        for s in &sols {
            assert!(verify(&s.labelling(), &c9).unwrap().ok);
            assert!(RandomCycleSystem::is_valid_map(&s.system.g));
        }
        let again = random_cycle_search(9, 2024, 1000, 20_000).unwrap();
        assert_eq!(sols.len(), again.len());
    }

    #[test]
    fn budget_exhaustion() {
        assert_eq!(random_cycle_search(9, 1, 2, 3).unwrap_err(), LinAlgError::NoSolutionWithinBudget(3));
    }
}
