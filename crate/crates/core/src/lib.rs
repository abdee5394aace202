//! Cramer's rule for the full set of unknowns and for a leading subset.
//!
//! Given `X' = R X` with `R` square, [`cramer_partial::solve_partial`]
//! writes `x_1..x_j` as affine maps of `x'_1..x'_j` and the remaining
//! unknowns `x_{j+1}..x_n`, using only the leading `j x j` block of `R` and
//! its minor `D_j`. At `j = n` this is classical Cramer's rule
//! ([`cramer_full::solve_full`]).
//!
//! Everything is generic over [`Scalar`]: exact [`Rational`]s (the default
//! for tests and the CLI) or `f64`. The [`oracle`] module re-derives every
//! result by row reduction without touching the determinant code.
//!
//! ```
//! use cramer_core::{models, cramer_partial, Rational, Scalar};
//!
//! let masses = vec![Rational::from_i64(1), Rational::from_i64(2), Rational::from_i64(3), Rational::from_i64(4)];
//! let spec = models::ChainSpec::new(masses, Rational::from_i64(1)).unwrap();
//! let sys = models::build_chain_system(&spec);
//! let maps = cramer_partial::solve_partial(&sys, 3).unwrap();
//! // T1 = x'1 + x'2 + x'3 + T4
//! assert_eq!(maps.tail_coeffs()[(0, 0)], Rational::from_i64(1));
//! ```

pub mod affine;
pub mod cli;
pub mod cramer_full;
pub mod cramer_partial;
pub mod determinant;
pub mod error;
pub mod matrix;
pub mod models;
pub mod oracle;
pub mod sample;
pub mod scalar;

pub use affine::{AffineSolution, RowPermutation};
pub use error::{Error, Result};
pub use matrix::{make_matrix, AnyMatrix, ColumnVector, Matrix, SystemSpec};
pub use scalar::{Rational, Scalar, ScalarKind, ScalarValue, Tolerance};
