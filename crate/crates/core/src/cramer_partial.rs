//! Cramer's rule for a leading subset of the unknowns.
//!
//! For a cut `1 <= j <= n` with `D_j = det(R_[j x j]) != 0`,
//!
//! ```text
//! x_i = det(R^(i)_[j x j](X'_[j] - X'_perp[j])) / D_j,    i = 1..j
//! X'_perp[j] = sum_{k > j} x_k (R_1k, ..., R_jk)^T
//! ```
//!
//! expresses `x_1..x_j` through `x'_1..x'_j` and the untouched unknowns
//! `x_{j+1}..x_n`. At `j = n` the tail is empty and this is the classical
//! rule. The determinant is linear in the replaced column, so the map's
//! coefficients come from substituting unit vectors for `X'_[j]` and the
//! negated columns `-(R_1k..R_jk)` for each tail unknown.
//!
//! [`eliminate_stepwise`] reaches the same maps by a different route: it
//! eliminates one unknown per equation and back-substitutes, recording the
//! chain of maps for cuts `1, 2, ..., n`. Signed determinants are used
//! throughout.

use crate::affine::{AffineSolution, RowPermutation};
use crate::determinant::{
    column_replacement_determinants, det_fast, leading_minors, SingularityThreshold,
};
use crate::error::{Error, Result};
use crate::matrix::{ColumnVector, Matrix, SystemSpec};
use crate::scalar::{Scalar, Tolerance};

/// The block `R_ik` for `i <= j < k`: how `x_{j+1}..x_n` feed the first `j`
/// transformed coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct PerpContribution<T> {
    j: usize,
    coeffs: Matrix<T>,
}

impl<T: Scalar> PerpContribution<T> {
    pub fn j(&self) -> usize {
        self.j
    }

    /// `j x (n - j)`; column `c` holds `(R_1k..R_jk)` for `k = j + 1 + c`.
    /// Zero columns when `j = n`.
    pub fn coeffs(&self) -> &Matrix<T> {
        &self.coeffs
    }

    /// `X'_perp[j]` for concrete values of `x_{j+1}..x_n`.
    pub fn value(&self, tail: &[T]) -> Result<ColumnVector<T>> {
        if tail.len() != self.coeffs.cols() {
            return Err(Error::DimensionMismatch(format!(
                "cut {} expects {} tail values, got {}",
                self.j,
                self.coeffs.cols(),
                tail.len()
            )));
        }
        Ok(ColumnVector::new(
            (0..self.j)
                .map(|i| {
                    self.coeffs
                        .row(i)
                        .iter()
                        .zip(tail)
                        .fold(T::zero(), |acc, (r, x)| acc + r.clone() * x.clone())
                })
                .collect(),
        ))
    }
}

pub fn perp_contribution<T: Scalar>(r: &Matrix<T>, j: usize) -> Result<PerpContribution<T>> {
    let n = check_cut(r, j)?;
    Ok(PerpContribution {
        j,
        coeffs: Matrix::from_fn(j, n - j, |i, c| r[(i, j + c)].clone()),
    })
}

fn check_cut<T: Scalar>(r: &Matrix<T>, j: usize) -> Result<usize> {
    let n = r.require_square()?;
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange {
            what: "cut index",
            index: j,
            max: n,
        });
    }
    Ok(n)
}

pub fn solve_partial<T: Scalar>(sys: &SystemSpec<T>, j: usize) -> Result<AffineSolution<T>> {
    solve_partial_with(sys, j, SingularityThreshold::default())
}

/// Affine maps for `x_1..x_j`. Only `D_j` has to be nonzero; smaller minors
/// may vanish.
pub fn solve_partial_with<T: Scalar>(
    sys: &SystemSpec<T>,
    j: usize,
    threshold: SingularityThreshold,
) -> Result<AffineSolution<T>> {
    let r = sys.r();
    let n = check_cut(r, j)?;
    let block = r.leading_submatrix(j)?;
    let perp = perp_contribution(r, j)?;

    let mut columns: Vec<ColumnVector<T>> = (0..j).map(|l| ColumnVector::unit(j, l)).collect();
    columns.extend((0..n - j).map(|c| perp.coeffs().column(c).scale(&-T::one())));

    let dets = match column_replacement_determinants(&block, &columns) {
        Ok(d) => d,
        Err(Error::SingularMatrix) => return Err(Error::ZeroLeadingMinor { j }),
        Err(e) => return Err(e),
    };
    if threshold.vanishes(&dets.det, &block) {
        return Err(Error::ZeroLeadingMinor { j });
    }
    let d_j = dets.det;
    let coeff = |c: usize, i: usize| dets.columns[c][i].clone() / d_j.clone();
    let prime = Matrix::from_fn(j, j, |i, l| coeff(l, i));
    let tail = Matrix::from_fn(j, n - j, |i, c| coeff(j + c, i));
    AffineSolution::new(n, d_j.clone(), prime, tail)
}

/// One stage of [`eliminate_stepwise`].
#[derive(Debug, Clone, PartialEq)]
pub struct TraceStep<T> {
    pub j: usize,
    pub minor: T,
    pub solution: AffineSolution<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EliminationTrace<T> {
    pub steps: Vec<TraceStep<T>>,
}

impl<T: Scalar> EliminationTrace<T> {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn last(&self) -> Option<&TraceStep<T>> {
        self.steps.last()
    }
}

/// Stepwise elimination stopped at a vanishing minor.
#[derive(Debug, Clone, PartialEq)]
pub struct IncompleteTrace<T> {
    /// The step whose minor `D_j` vanished.
    pub failed_at: usize,
    /// Steps `1..failed_at - 1`.
    pub partial: EliminationTrace<T>,
}

impl<T> From<IncompleteTrace<T>> for Error {
    fn from(e: IncompleteTrace<T>) -> Self {
        Error::ZeroLeadingMinor { j: e.failed_at }
    }
}

pub fn eliminate_stepwise<T: Scalar>(
    sys: &SystemSpec<T>,
) -> std::result::Result<EliminationTrace<T>, IncompleteTrace<T>> {
    eliminate_stepwise_with(sys, SingularityThreshold::default())
}

/// Builds the maps for cuts `1..n` in sequence.
///
/// Step `j` substitutes the cut-`(j-1)` maps for `x_1..x_{j-1}` into
/// equation `j`, solves it for `x_j`, and substitutes that back into the
/// earlier maps. After substitution the coefficient of `x_j` in equation `j`
/// is `D_j / D_{j-1}`, which yields the minors as running products.
pub fn eliminate_stepwise_with<T: Scalar>(
    sys: &SystemSpec<T>,
    threshold: SingularityThreshold,
) -> std::result::Result<EliminationTrace<T>, IncompleteTrace<T>> {
    let r = sys.r();
    let n = sys.dim();
    // Rows are maps for x_1..x_c; prime columns over x'_1..x'_c, tail
    // columns over x_{c+1}..x_n.
    let mut prime: Vec<Vec<T>> = Vec::new();
    let mut tail: Vec<Vec<T>> = Vec::new();
    let mut minor = T::one();
    let mut steps = Vec::with_capacity(n);

    for c in 0..n {
        let j = c + 1;
        let eq = r.row(c);
        // Equation j with x_1..x_{c} substituted:
        //   x'_j = sum_l a_l x'_l + sum_t b_t x_{c+1+t}
        let a: Vec<T> = (0..c)
            .map(|l| {
                (0..c).fold(T::zero(), |acc, k| acc + eq[k].clone() * prime[k][l].clone())
            })
            .collect();
        let b: Vec<T> = (0..n - c)
            .map(|t| {
                (0..c).fold(eq[c + t].clone(), |acc, k| {
                    acc + eq[k].clone() * tail[k][t].clone()
                })
            })
            .collect();
        let pivot = b[0].clone();
        let next_minor = minor.clone() * pivot.clone();
        let block = r.leading_submatrix(j).expect("cut within range");
        if pivot.is_zero() || threshold.vanishes(&next_minor, &block) {
            return Err(IncompleteTrace {
                failed_at: j,
                partial: EliminationTrace { steps },
            });
        }
        minor = next_minor;

        // x_j = (x'_j - sum_l a_l x'_l - sum_{t >= 1} b_t x_{c+1+t}) / pivot
        let mut new_prime: Vec<T> = a.iter().map(|v| -v.clone() / pivot.clone()).collect();
        new_prime.push(T::one() / pivot.clone());
        let new_tail: Vec<T> = b[1..].iter().map(|v| -v.clone() / pivot.clone()).collect();

        for k in 0..c {
            let weight = tail[k][0].clone();
            prime[k].push(T::zero());
            for (p, np) in prime[k].iter_mut().zip(&new_prime) {
                *p = p.clone() + weight.clone() * np.clone();
            }
            let old_tail = std::mem::take(&mut tail[k]);
            tail[k] = old_tail[1..]
                .iter()
                .zip(&new_tail)
                .map(|(t, nt)| t.clone() + weight.clone() * nt.clone())
                .collect();
        }
        prime.push(new_prime);
        tail.push(new_tail);

        let solution = AffineSolution::new(
            n,
            minor.clone(),
            Matrix::from_fn(j, j, |i, l| prime[i][l].clone()),
            Matrix::from_fn(j, n - j, |i, t| tail[i][t].clone()),
        )
        .expect("shapes follow the cut");
        steps.push(TraceStep {
            j,
            minor: minor.clone(),
            solution,
        });
    }
    Ok(EliminationTrace { steps })
}

/// Values of all `x` and `x'` at which the induction identity is evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityPoint<T> {
    pub x: ColumnVector<T>,
    pub x_prime: ColumnVector<T>,
}

impl<T: Scalar> IdentityPoint<T> {
    /// Takes free values for `x'` and `x_p..x_n` (entries `p-1..` of `x_seed`)
    /// and fills `x_1..x_{p-1}` from the cut-`(p-1)` maps.
    pub fn consistent(
        r: &Matrix<T>,
        p: usize,
        x_prime: ColumnVector<T>,
        x_seed: ColumnVector<T>,
    ) -> Result<Self> {
        let n = check_identity_step(r, p)?;
        if x_prime.dim() != n || x_seed.dim() != n {
            return Err(Error::DimensionMismatch(format!(
                "point needs {n} values for x and x', got {} and {}",
                x_seed.dim(),
                x_prime.dim()
            )));
        }
        let sys = SystemSpec::new(r.clone(), x_prime.clone())?;
        let maps = solve_partial(&sys, p - 1)?;
        let head = maps.evaluate(&x_prime.entries()[..p - 1], &x_seed.entries()[p - 1..])?;
        let x = head
            .into_entries()
            .into_iter()
            .chain(x_seed.entries()[p - 1..].iter().cloned())
            .collect();
        Ok(IdentityPoint {
            x: ColumnVector::new(x),
            x_prime,
        })
    }
}

fn check_identity_step<T: Scalar>(r: &Matrix<T>, p: usize) -> Result<usize> {
    let n = r.require_square()?;
    if p < 2 || p > n {
        return Err(Error::IndexOutOfRange {
            what: "identity step",
            index: p,
            max: n,
        });
    }
    Ok(n)
}

/// Both sides of the induction step
///
/// ```text
/// D_{p-1} (x'_p - sum_k R_pk x_k) = det(R^(p)_[p x p](X'_[p] - X'_perp[p])) - D_p x_p
/// ```
///
/// at a point whose `x_1..x_{p-1}` follow the cut-`(p-1)` maps. Requires
/// `D_1..D_{p-1}` nonzero.
pub fn check_induction_identity<T: Scalar>(
    r: &Matrix<T>,
    p: usize,
    point: &IdentityPoint<T>,
) -> Result<(T, T)> {
    let n = check_identity_step(r, p)?;
    if point.x.dim() != n || point.x_prime.dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "point needs {n} values for x and x', got {} and {}",
            point.x.dim(),
            point.x_prime.dim()
        )));
    }
    let minors = leading_minors(r)?;
    let threshold = SingularityThreshold::default();
    if let Some(j) = (1..p).find(|&j| {
        threshold.vanishes(minors.get(j), &r.leading_submatrix(j).expect("j < p <= n"))
    }) {
        return Err(Error::ZeroLeadingMinor { j });
    }

    let sys = SystemSpec::new(r.clone(), point.x_prime.clone())?;
    let maps = solve_partial(&sys, p - 1)?;
    let expected = maps.evaluate(
        &point.x_prime.entries()[..p - 1],
        &point.x.entries()[p - 1..],
    )?;
    if !expected.approx_eq(&point.x.head(p - 1), Tolerance::default()) {
        return Err(Error::InconsistentPoint { cut: p - 1 });
    }

    let row = r.row(p - 1);
    let lhs = minors.get(p - 1).clone()
        * (point.x_prime[p - 1].clone()
            - row
                .iter()
                .zip(point.x.entries())
                .fold(T::zero(), |acc, (c, x)| acc + c.clone() * x.clone()));

    let perp = perp_contribution(r, p)?.value(&point.x.entries()[p..])?;
    let column = point.x_prime.head(p).sub(&perp)?;
    let replaced = det_fast(&r.leading_submatrix(p)?.replace_column(p, &column)?)?;
    let rhs = replaced - minors.get(p).clone() * point.x[p - 1].clone();
    Ok((lhs, rhs))
}

/// The three groups the left side of the induction identity splits into:
/// primed coordinates (`a`), `x_p` (`b`), and `x_{p+1}..x_n` (`c`).
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityTerms<T> {
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<T: Scalar> IdentityTerms<T> {
    pub fn sum(&self) -> T {
        self.a.clone() + self.b.clone() + self.c.clone()
    }
}

/// Evaluates the term groups of the induction step twice: as collected
/// sums over `(p-1) x (p-1)` replaced-column determinants (`.0`), and in
/// their closed `p x p` forms `det(R^(p)(X'_[p]))`, `-D_p x_p`,
/// `-det(R^(p)(X'_perp[p]))` (`.1`).
///
/// Needs no consistency between `x` and `x'`, and no nonzero minors.
pub fn identity_terms<T: Scalar>(
    r: &Matrix<T>,
    p: usize,
    x_prime: &ColumnVector<T>,
    x: &ColumnVector<T>,
) -> Result<(IdentityTerms<T>, IdentityTerms<T>)> {
    let n = check_identity_step(r, p)?;
    if x_prime.dim() != n || x.dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "point needs {n} values for x and x', got {} and {}",
            x.dim(),
            x_prime.dim()
        )));
    }
    let small = r.leading_submatrix(p - 1)?;
    let big = r.leading_submatrix(p)?;
    let d_small = det_fast(&small)?;
    let d_big = det_fast(&big)?;
    let row = r.row(p - 1);
    let xp = x[p - 1].clone();

    // Columns substituted into the (p-1)-block.
    let primed_head = x_prime.head(p - 1);
    let coupling = ColumnVector::new((0..p - 1).map(|i| r[(i, p - 1)].clone() * xp.clone()).collect());
    let far_head = ColumnVector::new(
        (0..p - 1)
            .map(|i| {
                (p..n).fold(T::zero(), |acc, l| acc + r[(i, l)].clone() * x[l].clone())
            })
            .collect(),
    );
    let weighted = |v: &ColumnVector<T>| -> Result<T> {
        (1..p).try_fold(T::zero(), |acc, k| {
            Ok(acc + row[k - 1].clone() * det_fast(&small.replace_column(k, v)?)?)
        })
    };
    let far_row = (p..n).fold(T::zero(), |acc, l| acc + row[l].clone() * x[l].clone());
    let collected = IdentityTerms {
        a: d_small.clone() * x_prime[p - 1].clone() - weighted(&primed_head)?,
        b: weighted(&coupling)? - row[p - 1].clone() * d_small.clone() * xp.clone(),
        c: weighted(&far_head)? - d_small * far_row,
    };

    let perp = perp_contribution(r, p)?.value(&x.entries()[p..])?;
    let closed = IdentityTerms {
        a: det_fast(&big.replace_column(p, &x_prime.head(p))?)?,
        b: -(d_big * xp),
        c: -det_fast(&big.replace_column(p, &perp)?)?,
    };
    Ok((collected, closed))
}

/// A system with equations reordered so all leading minors are nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct Reordered<T> {
    pub system: SystemSpec<T>,
    pub permutation: RowPermutation,
}

/// Row-pivoted elimination: `P R = L U` with nonzero pivots makes every
/// leading minor of `P R` nonzero.
///
/// Exact kind takes the first usable pivot (so an already admissible system
/// keeps the identity order); floats take the largest.
pub fn reorder_for_nonzero_minors<T: Scalar>(sys: &SystemSpec<T>) -> Result<Reordered<T>> {
    let r = sys.r();
    let n = sys.dim();
    let threshold = SingularityThreshold::default();
    if threshold.vanishes(&det_fast(r)?, r) {
        return Err(Error::SingularMatrix);
    }
    let mut a = r.row_vecs();
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let p = if T::is_exact() {
            (k..n).find(|&i| !a[i][k].is_zero())
        } else {
            (k..n)
                .filter(|&i| !a[i][k].is_zero())
                .max_by(|&x, &y| {
                    a[x][k]
                        .abs()
                        .partial_cmp(&a[y][k].abs())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
        }
        .ok_or(Error::SingularMatrix)?;
        a.swap(p, k);
        perm.swap(p, k);
        let (top, below) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in below {
            let factor = row[k].clone() / pivot_row[k].clone();
            for (x, p) in row[k..].iter_mut().zip(&pivot_row[k..]) {
                *x = x.clone() - factor.clone() * p.clone();
            }
        }
    }
    let permutation = RowPermutation::from_vec(perm)?;
    Ok(Reordered {
        system: sys.permute_equations(permutation.as_slice()),
        permutation,
    })
}
