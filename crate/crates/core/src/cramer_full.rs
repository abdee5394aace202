//! Classical Cramer's rule: `x_i = det(R^(i)(X')) / det(R)`.

use crate::determinant::{column_replacement_determinants, det_fast, SingularityThreshold};
use crate::error::{Error, Result};
use crate::matrix::{ColumnVector, SystemSpec};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct FullSolution<T> {
    pub x: ColumnVector<T>,
    pub det_r: T,
}

pub fn solve_full<T: Scalar>(sys: &SystemSpec<T>) -> Result<FullSolution<T>> {
    solve_full_with(sys, SingularityThreshold::default())
}

/// Cramer's rule with the column-replacement determinants read off a single
/// fraction-free elimination of `[R | X']`.
pub fn solve_full_with<T: Scalar>(
    sys: &SystemSpec<T>,
    threshold: SingularityThreshold,
) -> Result<FullSolution<T>> {
    let dets = column_replacement_determinants(sys.r(), std::slice::from_ref(sys.x_prime()))?;
    if threshold.vanishes(&dets.det, sys.r()) {
        return Err(Error::SingularMatrix);
    }
    let numerators = dets.columns.into_iter().next().expect("one right-hand side");
    Ok(FullSolution {
        x: ColumnVector::new(
            numerators
                .into_iter()
                .map(|d| d / dets.det.clone())
                .collect(),
        ),
        det_r: dets.det,
    })
}

/// Cramer's rule by `n + 1` independent determinant evaluations.
///
/// Slower than [`solve_full`]; kept as the literal form of the rule.
pub fn solve_full_naive<T: Scalar>(sys: &SystemSpec<T>) -> Result<FullSolution<T>> {
    let r = sys.r();
    let det_r = det_fast(r)?;
    if SingularityThreshold::default().vanishes(&det_r, r) {
        return Err(Error::SingularMatrix);
    }
    let x = (1..=sys.dim())
        .map(|i| Ok(det_fast(&r.replace_column(i, sys.x_prime())?)? / det_r.clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(FullSolution {
        x: ColumnVector::new(x),
        det_r,
    })
}

/// `X' - R x`.
pub fn residual<T: Scalar>(sys: &SystemSpec<T>, x: &ColumnVector<T>) -> Result<ColumnVector<T>> {
    sys.x_prime().sub(&sys.r().mul_vec(x)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::matrix::Matrix;
    use crate::models::{build_chain_system, ChainSpec};
    use crate::scalar::{Rational, Tolerance};
    use proptest::prelude::*;

    type Q = Rational;

    fn q(v: i64) -> Q {
        Q::from_i64(v)
    }

    #[test]
    fn identity_returns_rhs() {
        let rhs = ColumnVector::new(vec![Q::from_ratio(1, 3), q(-4), q(7)]);
        let sys = SystemSpec::new(Matrix::identity(3), rhs.clone()).unwrap();
        let sol = solve_full(&sys).unwrap();
        assert_eq!(sol.x, rhs);
        assert_eq!(sol.det_r, q(1));
    }

    #[test]
    fn chain_tensions_are_suffix_sums() {
        let masses = vec![q(1), Q::from_ratio(5, 2), q(3), Q::from_ratio(1, 7)];
        let a = Q::from_ratio(9, 4);
        let spec = ChainSpec::new(masses.clone(), a.clone()).unwrap();
        let sol = solve_full(&build_chain_system(&spec)).unwrap();
        for i in 0..masses.len() {
            let sum = masses[i..].iter().fold(q(0), |acc, m| acc + m.clone());
            assert_eq!(sol.x[i], sum * a.clone());
        }
    }

    #[test]
    fn rank_deficient_is_singular() {
        let r = Matrix::<Q>::from_i64_rows(&[&[1, 1], &[1, 1]]).unwrap();
        let sys = SystemSpec::new(r, ColumnVector::from_i64(&[3, -2])).unwrap();
        assert_eq!(solve_full(&sys), Err(Error::SingularMatrix));
        assert_eq!(solve_full_naive(&sys), Err(Error::SingularMatrix));
        let f = Matrix::<f64>::from_rows(vec![vec![1.0, 1.0], vec![1.0, 1.0 + 1e-15]]).unwrap();
        let fsys = SystemSpec::new(f, ColumnVector::new(vec![1.0, 2.0])).unwrap();
        assert_eq!(solve_full(&fsys), Err(Error::SingularMatrix));
    }

    #[test]
    fn threshold_is_configurable() {
        let f = Matrix::<f64>::from_rows(vec![vec![1e-7, 0.0], vec![0.0, 1e-7]]).unwrap();
        let fsys = SystemSpec::new(f, ColumnVector::new(vec![1.0, 2.0])).unwrap();
        assert_eq!(
            solve_full_with(&fsys, SingularityThreshold(1e-12)),
            Err(Error::SingularMatrix)
        );
        let sol = solve_full_with(&fsys, SingularityThreshold(1e-20)).unwrap();
        assert!(sol.x.approx_eq(&ColumnVector::new(vec![1e7, 2e7]), Tolerance::default()));
    }

    #[test]
    fn residual_examples() {
        let sys = SystemSpec::new(Matrix::<Q>::identity(3), ColumnVector::zeros(3)).unwrap();
        assert!(residual(&sys, &ColumnVector::zeros(3)).unwrap().is_zero());

        let spec = ChainSpec::new(vec![q(1), q(2), q(3)], q(2)).unwrap();
        let chain = build_chain_system(&spec);
        assert!(residual(&chain, &ColumnVector::from_i64(&[12, 10, 6])).unwrap().is_zero());
        assert_eq!(
            residual(&chain, &ColumnVector::from_i64(&[12, 10, 5])).unwrap(),
            ColumnVector::from_i64(&[0, -1, 1])
        );
        assert!(residual(&chain, &ColumnVector::from_i64(&[1, 2])).is_err());
    }

    fn nonsingular_system(max_n: usize) -> impl Strategy<Value = SystemSpec<Q>> {
        (1..=max_n)
            .prop_flat_map(|n| {
                (
                    proptest::collection::vec(-9i64..=9, n * n),
                    proptest::collection::vec(-9i64..=9, n),
                )
                    .prop_map(move |(m, v)| {
                        SystemSpec::new(
                            Matrix::new(n, n, m.into_iter().map(q).collect()).unwrap(),
                            ColumnVector::from_i64(&v),
                        )
                        .unwrap()
                    })
            })
            .prop_filter("nonsingular", |s| !det_fast(s.r()).unwrap().is_zero())
    }

    proptest! {
        #[test]
        fn batched_matches_naive(sys in nonsingular_system(6)) {
            let fast = solve_full(&sys).unwrap();
            prop_assert_eq!(&fast, &solve_full_naive(&sys).unwrap());
            prop_assert!(residual(&sys, &fast.x).unwrap().is_zero());
        }

        #[test]
        fn row_scaling_leaves_solution(sys in nonsingular_system(6), row in 0usize..6, c in 1i64..=7, neg: bool) {
            let i = row % sys.dim();
            let c = if neg { q(-c) } else { q(c) } / q(3);
            let scaled = sys.scale_equation(i, &c);
            prop_assert_eq!(solve_full(&scaled).unwrap().x, solve_full(&sys).unwrap().x);
        }
    }
}
