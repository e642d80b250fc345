use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use super::LinAlgError;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T = BigInt> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Integer + Signed + Clone> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<T, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut a = self.clone();
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return Ok(T::zero());
                };
                a.swap_rows(k, p);
                negate = !negate;
            }
            let pivot = a[(k, k)].clone();
            for i in k + 1..n {
                let factor = a[(i, k)].clone();
                for j in k + 1..n {
                    let v = (a[(i, j)].clone() * pivot.clone() - factor.clone() * a[(k, j)].clone()) / prev.clone();
                    a[(i, j)] = v;
                }
                a[(i, k)] = T::zero();
            }
            prev = pivot;
        }
        let det = a[(n - 1, n - 1)].clone();
        Ok(if negate { -det } else { det })
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for c in 0..self.cols {
            self.entries.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn to_rational(&self) -> Vec<Vec<Ratio<T>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| Ratio::from_integer(x.clone())).collect())
            .collect()
    }

    pub fn rank(&self) -> usize {
        rref(&mut self.to_rational(), self.cols).len()
    }

    /// Basis of `{v : M v = 0}` over the rationals, one vector per free
    /// column. Each vector is scaled to coprime integers with a positive
    /// leading non-zero entry.
    pub fn rational_nullspace(&self) -> Vec<Vec<T>> {
        let mut a = self.to_rational();
        let pivots = rref(&mut a, self.cols);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Ratio::zero(); self.cols];
                v[f] = Ratio::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -a[r][f].clone();
                }
                primitive(&v)
            })
            .collect()
    }

    /// One rational solution of `M x = b` (free variables set to zero).
    pub fn solve(&self, b: &[T]) -> Option<Vec<Ratio<T>>> {
        assert_eq!(b.len(), self.rows);
        let mut a = self.to_rational();
        for (row, rhs) in a.iter_mut().zip(b) {
            row.push(Ratio::from_integer(rhs.clone()));
        }
        let pivots = rref(&mut a, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Ratio::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = a[r][self.cols].clone();
        }
        Some(x)
    }
}

/// Reduced row echelon form in place over the first `cols` columns;
/// returns the pivot columns.
fn rref<T: Integer + Signed + Clone>(a: &mut [Vec<Ratio<T>>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let factor = a[i][c].clone();
                for j in 0..a[i].len() {
                    let sub = factor.clone() * a[r][j].clone();
                    a[i][j] = a[i][j].clone() - sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Scales a rational vector to coprime integers with positive leading entry.
pub fn primitive<T: Integer + Signed + Clone>(v: &[Ratio<T>]) -> Vec<T> {
    let lcm = v.iter().fold(T::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<T> = v.iter().map(|x| x.numer().clone() * (lcm.clone() / x.denom().clone())).collect();
    normalise(ints)
}

/// Divides by the gcd and flips the sign so the first non-zero entry is
/// positive. The zero vector is returned unchanged.
pub fn normalise<T: Integer + Signed + Clone>(mut v: Vec<T>) -> Vec<T> {
    let g = v.iter().fold(T::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v;
    }
    let flip = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    for x in v.iter_mut() {
        *x = x.clone() / g.clone();
        if flip {
            *x = -x.clone();
        }
    }
    v
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.entries[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.entries[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.entries[i * self.cols..(i + 1) * self.cols].iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
