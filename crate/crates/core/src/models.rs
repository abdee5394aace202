//! System builders for physical models.
//!
//! The block chain: `n` blocks joined by ropes and pulled so that all move
//! with a common acceleration `a`. Newton's second law for block `i` gives
//! `m_i a = T_i - T_{i+1}` (with `T_{n+1} = 0`), i.e. an upper bidiagonal
//! system with unknowns the rope tensions `T_i`.
//!
//! Units are not enforced; masses and acceleration are plain scalars.

use crate::error::{Error, Result};
use crate::matrix::{ColumnVector, Matrix, SystemSpec};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct ChainSpec<T> {
    masses: Vec<T>,
    acceleration: T,
}

impl<T: Scalar> ChainSpec<T> {
    pub fn new(masses: Vec<T>, acceleration: T) -> Result<Self> {
        if masses.is_empty() {
            return Err(Error::InvalidModel("chain needs at least one mass".into()));
        }
        if let Some(i) = masses.iter().position(|m| *m <= T::zero()) {
            return Err(Error::InvalidModel(format!(
                "mass {} must be positive, got {}",
                i + 1,
                masses[i]
            )));
        }
        Ok(ChainSpec {
            masses,
            acceleration,
        })
    }

    pub fn masses(&self) -> &[T] {
        &self.masses
    }

    pub fn acceleration(&self) -> &T {
        &self.acceleration
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }
}

/// Upper bidiagonal matrix: 1 on the diagonal, -1 on the superdiagonal.
pub fn chain_matrix<T: Scalar>(n: usize) -> Matrix<T> {
    Matrix::from_fn(n, n, |i, k| {
        if i == k {
            T::one()
        } else if k == i + 1 {
            -T::one()
        } else {
            T::zero()
        }
    })
}

/// `x'_i = m_i a` against the bidiagonal chain matrix.
pub fn build_chain_system<T: Scalar>(spec: &ChainSpec<T>) -> SystemSpec<T> {
    let r = chain_matrix(spec.len());
    let x_prime = ColumnVector::new(
        spec.masses
            .iter()
            .map(|m| m.clone() * spec.acceleration.clone())
            .collect(),
    );
    SystemSpec::new(r, x_prime).expect("chain system is square by construction")
}

/// `T_i = (m_i + ... + m_n) a`.
///
/// The summand runs over `k = i..n`; the all-ones upper-triangular inverse
/// of the chain matrix forces this reading.
pub fn chain_closed_form<T: Scalar>(spec: &ChainSpec<T>) -> ColumnVector<T> {
    let mut suffix = T::zero();
    let mut out: Vec<T> = spec
        .masses
        .iter()
        .rev()
        .map(|m| {
            suffix = suffix.clone() + m.clone();
            suffix.clone() * spec.acceleration.clone()
        })
        .collect();
    out.reverse();
    ColumnVector::new(out)
}

/// Upper-triangular all-ones matrix, the inverse of [`chain_matrix`].
pub fn chain_inverse_matrix<T: Scalar>(n: usize) -> Matrix<T> {
    Matrix::from_fn(n, n, |i, k| if k >= i { T::one() } else { T::zero() })
}
