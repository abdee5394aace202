//! Affine solution maps for a leading block of unknowns.
//!
//! At cut `j` each of `x_1..x_j` is written as
//!
//! ```text
//! x_i = sum_l P[i][l] * x'_l  +  sum_k Q[i][k] * x_{j+k}
//! ```
//!
//! with `P` the `j x j` prime block and `Q` the `j x (n - j)` tail block.
//! The maps carry no constant term.

use crate::error::{Error, Result};
use crate::matrix::{ColumnVector, Matrix, SystemSpec};
use crate::scalar::{Scalar, Tolerance};

#[derive(Debug, Clone, PartialEq)]
pub struct AffineSolution<T> {
    cut: usize,
    n: usize,
    d_j: T,
    prime_coeffs: Matrix<T>,
    tail_coeffs: Matrix<T>,
}

impl<T: Scalar> AffineSolution<T> {
    pub fn new(
        n: usize,
        d_j: T,
        prime_coeffs: Matrix<T>,
        tail_coeffs: Matrix<T>,
    ) -> Result<Self> {
        let cut = prime_coeffs.rows();
        if cut == 0 || cut > n {
            return Err(Error::IndexOutOfRange {
                what: "cut index",
                index: cut,
                max: n,
            });
        }
        if !prime_coeffs.is_square()
            || tail_coeffs.rows() != cut
            || tail_coeffs.cols() != n - cut
        {
            return Err(Error::DimensionMismatch(format!(
                "cut {cut} of an order-{n} system needs {cut}x{cut} and {cut}x{} blocks, got {}x{} and {}x{}",
                n - cut,
                prime_coeffs.rows(),
                prime_coeffs.cols(),
                tail_coeffs.rows(),
                tail_coeffs.cols()
            )));
        }
        if d_j.is_zero() {
            return Err(Error::ZeroLeadingMinor { j: cut });
        }
        Ok(AffineSolution {
            cut,
            n,
            d_j,
            prime_coeffs,
            tail_coeffs,
        })
    }

    /// The cut index `j`.
    pub fn cut(&self) -> usize {
        self.cut
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The leading principal minor `D_j`.
    pub fn d_j(&self) -> &T {
        &self.d_j
    }

    /// Coefficient of `x'_l` in the map for `x_i`, at `(i - 1, l - 1)`.
    pub fn prime_coeffs(&self) -> &Matrix<T> {
        &self.prime_coeffs
    }

    /// Coefficient of `x_{j+k}` in the map for `x_i`, at `(i - 1, k - 1)`.
    pub fn tail_coeffs(&self) -> &Matrix<T> {
        &self.tail_coeffs
    }

    /// Values of `x_1..x_j` given `x'_1..x'_j` and `x_{j+1}..x_n`.
    pub fn evaluate(&self, x_prime_head: &[T], tail: &[T]) -> Result<ColumnVector<T>> {
        if x_prime_head.len() != self.cut || tail.len() != self.n - self.cut {
            return Err(Error::DimensionMismatch(format!(
                "cut {} expects {} primed and {} tail values, got {} and {}",
                self.cut,
                self.cut,
                self.n - self.cut,
                x_prime_head.len(),
                tail.len()
            )));
        }
        let dot = |row: &[T], vals: &[T]| {
            row.iter()
                .zip(vals)
                .fold(T::zero(), |acc, (c, v)| acc + c.clone() * v.clone())
        };
        Ok(ColumnVector::new(
            (0..self.cut)
                .map(|i| {
                    let tail_part = if tail.is_empty() {
                        T::zero()
                    } else {
                        dot(self.tail_coeffs.row(i), tail)
                    };
                    dot(self.prime_coeffs.row(i), x_prime_head) + tail_part
                })
                .collect(),
        ))
    }

    /// Solves for all unknowns when the cut is `n`; `None` otherwise.
    pub fn full_solution(&self, x_prime: &ColumnVector<T>) -> Option<ColumnVector<T>> {
        if self.cut != self.n || x_prime.dim() != self.n {
            return None;
        }
        self.evaluate(x_prime.entries(), &[]).ok()
    }

    /// Substitutes the maps into equations `1..j` of `sys` at the given
    /// point and returns `x'_i - sum_k R_ik x_k` for each of them.
    pub fn equation_defects(
        &self,
        sys: &SystemSpec<T>,
        x_prime_head: &[T],
        tail: &[T],
    ) -> Result<ColumnVector<T>> {
        let head = self.evaluate(x_prime_head, tail)?;
        let x: Vec<T> = head.entries().iter().chain(tail).cloned().collect();
        Ok(ColumnVector::new(
            (0..self.cut)
                .map(|i| {
                    let lhs = sys
                        .r()
                        .row(i)
                        .iter()
                        .zip(&x)
                        .fold(T::zero(), |acc, (r, v)| acc + r.clone() * v.clone());
                    x_prime_head[i].clone() - lhs
                })
                .collect(),
        ))
    }

    /// Coefficient-by-coefficient comparison, including `D_j`.
    pub fn approx_eq(&self, other: &Self, tol: Tolerance) -> bool {
        self.cut == other.cut
            && self.n == other.n
            && self.d_j.approx_eq(&other.d_j, tol)
            && self.prime_coeffs.approx_eq(&other.prime_coeffs, tol)
            && self.tail_coeffs.approx_eq(&other.tail_coeffs, tol)
    }
}

/// A reordering of equations: row `i` of the permuted system is row
/// `perm[i]` of the original (both 0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowPermutation(Vec<usize>);

impl RowPermutation {
    pub fn identity(n: usize) -> Self {
        RowPermutation((0..n).collect())
    }

    pub fn from_vec(perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::DimensionMismatch(format!("{perm:?} is not a permutation")));
            }
        }
        Ok(RowPermutation(perm))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// 1-based source equation for each permuted row.
    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|p| p + 1).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Rational;

    #[test]
    fn shape_validation() {
        let p = Matrix::<Q>::identity(2);
        assert!(AffineSolution::new(3, Q::from_i64(1), p.clone(), Matrix::zeros(2, 1)).is_ok());
        assert!(AffineSolution::new(3, Q::from_i64(1), p.clone(), Matrix::zeros(2, 2)).is_err());
        assert_eq!(
            AffineSolution::new(3, Q::from_i64(0), p, Matrix::zeros(2, 1)),
            Err(Error::ZeroLeadingMinor { j: 2 })
        );
    }

    #[test]
    fn evaluates_maps() {
        // x1 = 2 x'1 - x'2 + 3 x3, x2 = x'2
        let p = Matrix::<Q>::from_i64_rows(&[&[2, -1], &[0, 1]]).unwrap();
        let t = Matrix::from_i64_rows(&[&[3], &[0]]).unwrap();
        let sol = AffineSolution::new(3, Q::from_i64(1), p, t).unwrap();
        let out = sol
            .evaluate(&[Q::from_i64(1), Q::from_i64(2)], &[Q::from_i64(5)])
            .unwrap();
        assert_eq!(out, ColumnVector::from_i64(&[15, 2]));
        assert!(sol.full_solution(&ColumnVector::from_i64(&[1, 2, 3])).is_none());
        assert!(sol.evaluate(&[Q::from_i64(1)], &[]).is_err());
    }

    #[test]
    fn permutation_checks() {
        assert!(RowPermutation::from_vec(vec![1, 0, 2]).is_ok());
        assert!(RowPermutation::from_vec(vec![1, 1]).is_err());
        assert!(RowPermutation::from_vec(vec![0, 2]).is_err());
        assert!(RowPermutation::identity(4).is_identity());
        assert_eq!(RowPermutation::from_vec(vec![1, 0]).unwrap().one_based(), vec![2, 1]);
    }
}
