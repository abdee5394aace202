//! Reference solvers built on plain row reduction.
//!
//! Shares no code with the determinant or Cramer modules so that agreement
//! between the two is meaningful.

use crate::affine::{AffineSolution, RowPermutation};
use crate::error::{Error, Result};
use crate::matrix::{ColumnVector, Matrix, SystemSpec};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleSolution<T> {
    pub x: ColumnVector<T>,
    pub pivot_permutation: RowPermutation,
}

/// Relative pivot size below which a float pivot is treated as zero.
const FLOAT_PIVOT_EPS: f64 = 1e-13;

fn pivot_is_zero<T: Scalar>(pivot: &T, scale: f64) -> bool {
    pivot.is_negligible(scale.max(1.0), FLOAT_PIVOT_EPS)
}

/// Reduces `a` (rows `0..rows`, columns `0..rows` are the square head) to
/// reduced row echelon form in place, with partial pivoting.
///
/// Returns the row order and the signed product of pivots (the head's
/// determinant), or `None` when a pivot column is empty.
fn gauss_jordan<T: Scalar>(a: &mut [Vec<T>], rows: usize) -> Option<(Vec<usize>, T)> {
    let scale = a
        .iter()
        .flat_map(|r| r[..rows].iter())
        .map(|x| x.to_f64().abs())
        .fold(0.0, f64::max);
    let mut order: Vec<usize> = (0..rows).collect();
    let mut det = T::one();
    for k in 0..rows {
        let p = (k..rows)
            .max_by(|&x, &y| {
                a[x][k]
                    .abs()
                    .partial_cmp(&a[y][k].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("nonempty");
        if pivot_is_zero(&a[p][k], scale) {
            return None;
        }
        if p != k {
            a.swap(p, k);
            order.swap(p, k);
            det = -det;
        }
        let pivot = a[k][k].clone();
        det = det * pivot.clone();
        for v in a[k].iter_mut() {
            *v = v.clone() / pivot.clone();
        }
        let pivot_row = a[k].clone();
        for (i, row) in a.iter_mut().enumerate().take(rows) {
            if i == k || row[k].is_zero() {
                continue;
            }
            let factor = row[k].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v = v.clone() - factor.clone() * pv.clone();
            }
        }
    }
    Some((order, det))
}

/// Solves `R x = X'` by Gauss-Jordan elimination with partial pivoting.
pub fn solve_elimination<T: Scalar>(sys: &SystemSpec<T>) -> Result<OracleSolution<T>> {
    let n = sys.dim();
    let mut a: Vec<Vec<T>> = (0..n)
        .map(|i| {
            let mut row = sys.r().row(i).to_vec();
            row.push(sys.x_prime()[i].clone());
            row
        })
        .collect();
    let (order, _) = gauss_jordan(&mut a, n).ok_or(Error::SingularMatrix)?;
    Ok(OracleSolution {
        x: ColumnVector::new(a.into_iter().map(|row| row[n].clone()).collect()),
        pivot_permutation: RowPermutation::from_vec(order)?,
    })
}

/// Partial solve by treating `x_{j+1}..x_n` as symbols.
///
/// Equations `1..j` read `R_[j] x_[j] = I x'_[j] - R_tail x_tail`; the right
/// side is carried as coefficient columns (unit columns for the primed
/// symbols, negated tail columns for the rest) while the head block is
/// eliminated.
pub fn partial_solve_by_substitution<T: Scalar>(
    sys: &SystemSpec<T>,
    j: usize,
) -> Result<AffineSolution<T>> {
    let n = sys.dim();
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange {
            what: "cut index",
            index: j,
            max: n,
        });
    }
    let r = sys.r();
    let mut a: Vec<Vec<T>> = (0..j)
        .map(|i| {
            let mut row: Vec<T> = r.row(i)[..j].to_vec();
            row.extend((0..j).map(|l| if l == i { T::one() } else { T::zero() }));
            row.extend(r.row(i)[j..].iter().map(|v| -v.clone()));
            row
        })
        .collect();
    let (_, d_j) = gauss_jordan(&mut a, j).ok_or(Error::ZeroLeadingMinor { j })?;
    let prime = Matrix::from_fn(j, j, |i, l| a[i][j + l].clone());
    let tail = Matrix::from_fn(j, n - j, |i, t| a[i][2 * j + t].clone());
    AffineSolution::new(n, d_j, prime, tail)
}
