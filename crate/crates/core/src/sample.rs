//! Seeded random matrices, systems and points.
//!
//! ChaCha8 keeps streams reproducible across platforms and crate versions.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matrix::{ColumnVector, Matrix, SystemSpec};
use crate::scalar::{Rational, Scalar};

pub const DEFAULT_SEED: u64 = 0x5eed_c7a3;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Square matrix with integer entries uniform in `[-bound, bound]`.
pub fn int_matrix<R: Rng, T: Scalar>(rng: &mut R, n: usize, bound: i64) -> Matrix<T> {
    Matrix::from_fn(n, n, |_, _| T::from_i64(rng.gen_range(-bound..=bound)))
}

pub fn int_vector<R: Rng, T: Scalar>(rng: &mut R, n: usize, bound: i64) -> ColumnVector<T> {
    ColumnVector::new((0..n).map(|_| T::from_i64(rng.gen_range(-bound..=bound))).collect())
}

/// `p / q` with `p` in `[-bound, bound]` and `q` in `[1, max_den]`.
pub fn rational<R: Rng>(rng: &mut R, bound: i64, max_den: i64) -> Rational {
    Rational::from_ratio(rng.gen_range(-bound..=bound), rng.gen_range(1..=max_den))
}

/// Strictly positive `p / q` with `p` in `[1, bound]`.
pub fn positive_rational<R: Rng>(rng: &mut R, bound: i64, max_den: i64) -> Rational {
    Rational::from_ratio(rng.gen_range(1..=bound), rng.gen_range(1..=max_den))
}

pub fn rational_vector<R: Rng>(rng: &mut R, n: usize, bound: i64, max_den: i64) -> ColumnVector<Rational> {
    ColumnVector::new((0..n).map(|_| rational(rng, bound, max_den)).collect())
}

pub fn float_matrix<R: Rng>(rng: &mut R, n: usize, lo: f64, hi: f64) -> Matrix<f64> {
    Matrix::from_fn(n, n, |_, _| rng.gen_range(lo..=hi))
}

pub fn float_vector<R: Rng>(rng: &mut R, n: usize, lo: f64, hi: f64) -> ColumnVector<f64> {
    ColumnVector::new((0..n).map(|_| rng.gen_range(lo..=hi)).collect())
}

/// Integer system with the given lower and upper bandwidth and a nonzero
/// diagonal; `lower = 0` gives an upper-triangular system.
pub fn banded_system<R: Rng, T: Scalar>(
    rng: &mut R,
    n: usize,
    lower: usize,
    upper: usize,
    bound: i64,
) -> SystemSpec<T> {
    let r = Matrix::from_fn(n, n, |i, k| {
        if i == k {
            let v = rng.gen_range(1..=bound.max(1));
            T::from_i64(if rng.gen() { v } else { -v })
        } else if k + lower >= i && k <= i + upper {
            T::from_i64(rng.gen_range(-bound..=bound))
        } else {
            T::zero()
        }
    });
    let x_prime = int_vector(rng, n, bound);
    SystemSpec::new(r, x_prime).expect("square by construction")
}
