//! Determinants: a Leibniz-sum reference, a cubic production routine, the
//! leading principal minors `D_1..D_n`, and batched column-replacement
//! determinants `det(M^(i)(v))`.
//!
//! Exact scalars go through fraction-free (Bareiss) elimination so integral
//! inputs keep integral intermediates. Floats use Gaussian elimination with
//! partial pivoting and report the determinant of the unpermuted matrix.

use crate::error::{Error, Result};
use crate::matrix::{ColumnVector, Matrix};
use crate::scalar::Scalar;

/// Largest order accepted by [`det_leibniz`] (10! terms).
pub const LEIBNIZ_MAX_N: usize = 10;

/// When a float determinant counts as zero: `|det| <= threshold * max(1, max|entry|)^n`.
///
/// Heuristic. Exact scalars only ever test for zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularityThreshold(pub f64);

impl Default for SingularityThreshold {
    fn default() -> Self {
        SingularityThreshold(1e-12)
    }
}

impl SingularityThreshold {
    /// Whether `det`, the determinant of `m`, should be treated as zero.
    pub fn vanishes<T: Scalar>(&self, det: &T, m: &Matrix<T>) -> bool {
        let scale = m.max_abs().max(1.0).powi(m.rows() as i32);
        det.is_negligible(scale, self.0)
    }
}

/// Leading principal minors `D_1..D_n` of a square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct MinorSequence<T> {
    values: Vec<T>,
}

impl<T: Scalar> MinorSequence<T> {
    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// `D_j`, 1-based.
    pub fn get(&self, j: usize) -> &T {
        &self.values[j - 1]
    }

    /// `D_n = det(R)`.
    pub fn det(&self) -> &T {
        self.values.last().expect("minor sequence is never empty")
    }

    /// First `j` (1-based) whose minor vanishes under `threshold`.
    pub fn first_vanishing(&self, m: &Matrix<T>, threshold: SingularityThreshold) -> Option<usize> {
        (1..=self.n()).find(|&j| {
            let block = m.leading_submatrix(j).expect("j within range");
            threshold.vanishes(self.get(j), &block)
        })
    }
}

/// Determinant as the signed sum over all permutations.
///
/// Reference implementation, used as an oracle for [`det_fast`].
pub fn det_leibniz<T: Scalar>(m: &Matrix<T>) -> Result<T> {
    let n = m.require_square()?;
    if n > LEIBNIZ_MAX_N {
        return Err(Error::TooLargeForLeibniz {
            n,
            max: LEIBNIZ_MAX_N,
        });
    }
    // Heap's algorithm: every step is a single transposition, so the sign
    // alternates.
    let mut perm: Vec<usize> = (0..n).collect();
    let mut counters = vec![0usize; n];
    let mut positive = true;
    let term = |perm: &[usize]| {
        perm.iter()
            .enumerate()
            .fold(T::one(), |acc, (row, &col)| acc * m[(row, col)].clone())
    };
    let mut sum = term(&perm);
    let mut i = 1;
    while i < n {
        if counters[i] < i {
            let swap_with = if i % 2 == 0 { 0 } else { counters[i] };
            perm.swap(swap_with, i);
            positive = !positive;
            let t = term(&perm);
            sum = if positive { sum + t } else { sum - t };
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    Ok(sum)
}

/// Determinant in `O(n^3)`.
pub fn det_fast<T: Scalar>(m: &Matrix<T>) -> Result<T> {
    m.require_square()?;
    if T::is_exact() {
        Ok(bareiss_det(m))
    } else {
        Ok(pivoted_lu(m).map_or_else(T::zero, |lu| lu.det()))
    }
}

fn bareiss_det<T: Scalar>(m: &Matrix<T>) -> T {
    let n = m.rows();
    let mut a = m.row_vecs();
    let mut prev = T::one();
    let mut negate = false;
    for k in 0..n.saturating_sub(1) {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return T::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        bareiss_step(&mut a, k, n, &prev);
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// One fraction-free elimination step below pivot `(k, k)`.
fn bareiss_step<T: Scalar>(a: &mut [Vec<T>], k: usize, width: usize, prev: &T) {
    let (top, bottom) = a.split_at_mut(k + 1);
    let pivot_row = &top[k];
    let pivot = &pivot_row[k];
    for row in bottom.iter_mut() {
        let factor = row[k].clone();
        for j in k + 1..width {
            row[j] = (pivot.clone() * row[j].clone() - factor.clone() * pivot_row[j].clone())
                / prev.clone();
        }
        row[k] = T::zero();
    }
}

/// Leading principal minors in a single fraction-free pass.
///
/// Without pivoting, the Bareiss pivot at step `j` is exactly `D_j`. If a
/// pivot is zero the pass cannot continue, and the remaining minors are
/// computed block by block.
pub fn leading_minors<T: Scalar>(m: &Matrix<T>) -> Result<MinorSequence<T>> {
    let n = m.require_square()?;
    let mut a = m.row_vecs();
    let mut values = Vec::with_capacity(n);
    let mut prev = T::one();
    for k in 0..n {
        let pivot = a[k][k].clone();
        values.push(pivot.clone());
        if pivot.is_zero() {
            for j in k + 2..=n {
                values.push(det_fast(&m.leading_submatrix(j)?)?);
            }
            break;
        }
        if k + 1 < n {
            bareiss_step(&mut a, k, n, &prev);
        }
        prev = pivot;
    }
    Ok(MinorSequence { values })
}

/// `det(M)` together with `det(M^(i)(v))` for every column `i` and every
/// supplied vector `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplacedDeterminants<T> {
    pub det: T,
    /// `columns[c][i]` is `det(M^(i+1)(rhs[c]))`.
    pub columns: Vec<Vec<T>>,
}

/// Column-replacement determinants from one elimination of `[M | rhs...]`.
///
/// Exact kind: fraction-free Gauss-Jordan, after which every diagonal entry
/// equals `det(M)` and the augmented entries are the replaced-column
/// determinants themselves. Float kind: `det(M) * (M^-1 v)_i` from a pivoted
/// LU factorization. Fails with [`Error::SingularMatrix`] when `M` has no
/// nonzero pivot.
pub fn column_replacement_determinants<T: Scalar>(
    m: &Matrix<T>,
    rhs: &[ColumnVector<T>],
) -> Result<ReplacedDeterminants<T>> {
    let n = m.require_square()?;
    if let Some(v) = rhs.iter().find(|v| v.dim() != n) {
        return Err(Error::DimensionMismatch(format!(
            "replacement column has {} entries, matrix is {n}x{n}",
            v.dim()
        )));
    }
    if T::is_exact() {
        fraction_free_jordan(m, rhs)
    } else {
        let lu = pivoted_lu(m).ok_or(Error::SingularMatrix)?;
        let det = lu.det();
        let columns = rhs
            .iter()
            .map(|v| lu.solve(v).into_iter().map(|y| det.clone() * y).collect())
            .collect();
        Ok(ReplacedDeterminants { det, columns })
    }
}

fn fraction_free_jordan<T: Scalar>(
    m: &Matrix<T>,
    rhs: &[ColumnVector<T>],
) -> Result<ReplacedDeterminants<T>> {
    let n = m.rows();
    let width = n + rhs.len();
    let mut a: Vec<Vec<T>> = (0..n)
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.extend(rhs.iter().map(|v| v[i].clone()));
            row
        })
        .collect();
    let mut prev = T::one();
    let mut negate = false;
    for k in 0..n {
        let p = (k..n)
            .find(|&r| !a[r][k].is_zero())
            .ok_or(Error::SingularMatrix)?;
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        let pivot_row = a[k].clone();
        let pivot = &pivot_row[k];
        let unit_ratio = *pivot == prev;
        for (i, row) in a.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let factor = row[k].clone();
            if unit_ratio && factor.is_zero() {
                continue;
            }
            for j in (0..width).filter(|&j| j != k) {
                if unit_ratio && pivot_row[j].is_zero() {
                    continue;
                }
                row[j] = (pivot.clone() * row[j].clone() - factor.clone() * pivot_row[j].clone())
                    / prev.clone();
            }
            row[k] = T::zero();
        }
        prev = pivot.clone();
    }
    let fix = |x: T| if negate { -x } else { x };
    let columns = (0..rhs.len())
        .map(|c| (0..n).map(|i| fix(a[i][n + c].clone())).collect())
        .collect();
    Ok(ReplacedDeterminants {
        det: fix(prev),
        columns,
    })
}

/// `P M = L U` with unit-lower `L`, stored compactly.
struct PivotedLu<T> {
    lu: Vec<Vec<T>>,
    perm: Vec<usize>,
    negate: bool,
}

fn pivoted_lu<T: Scalar>(m: &Matrix<T>) -> Option<PivotedLu<T>> {
    let n = m.rows();
    let mut a = m.row_vecs();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut negate = false;
    for k in 0..n {
        let p = (k..n)
            .max_by(|&x, &y| {
                a[x][k]
                    .abs()
                    .partial_cmp(&a[y][k].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("nonempty range");
        if a[p][k].is_zero() {
            return None;
        }
        if p != k {
            a.swap(p, k);
            perm.swap(p, k);
            negate = !negate;
        }
        let (top, below) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in below {
            let factor = row[k].clone() / pivot_row[k].clone();
            for (x, p) in row[k + 1..].iter_mut().zip(&pivot_row[k + 1..]) {
                *x = x.clone() - factor.clone() * p.clone();
            }
            row[k] = factor;
        }
    }
    Some(PivotedLu {
        lu: a,
        perm,
        negate,
    })
}

impl<T: Scalar> PivotedLu<T> {
    fn det(&self) -> T {
        let prod = (0..self.lu.len()).fold(T::one(), |acc, i| acc * self.lu[i][i].clone());
        if self.negate {
            -prod
        } else {
            prod
        }
    }

    fn solve(&self, b: &ColumnVector<T>) -> Vec<T> {
        let n = self.lu.len();
        let mut y: Vec<T> = self.perm.iter().map(|&p| b[p].clone()).collect();
        for i in 0..n {
            for k in 0..i {
                let delta = self.lu[i][k].clone() * y[k].clone();
                y[i] = y[i].clone() - delta;
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                let delta = self.lu[i][k].clone() * y[k].clone();
                y[i] = y[i].clone() - delta;
            }
            y[i] = y[i].clone() / self.lu[i][i].clone();
        }
        y
    }
}
