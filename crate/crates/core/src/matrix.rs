//! Dense row-major matrices, column vectors and the `X' = R X` system container.
//!
//! Element access through `Index` is 0-based. Operations that take a cut or
//! column index as a parameter (`leading_submatrix`, `replace_column`, ...)
//! take it 1-based, and errors report 1-based indices.

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::scalar::{FromScalarValue, Rational, Scalar, ScalarKind, ScalarValue, Tolerance};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    /// Builds a `rows x cols` matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!(
                "matrix must have at least one row and column, got {rows}x{cols}"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            data: entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != ncols) {
            return Err(Error::DimensionMismatch(format!(
                "row {} has {} entries, expected {ncols}",
                i + 1,
                row.len()
            )));
        }
        Matrix::new(nrows, ncols, rows.into_iter().flatten().collect())
    }

    /// Integer entries, handy for literals in tests and examples.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| T::from_i64(v)).collect())
                .collect(),
        )
    }

    /// Like [`Matrix::new`] but a zero-width or zero-height block is allowed.
    ///
    /// Used for coefficient blocks such as the tail block at cut `j = n`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for k in 0..cols {
                data.push(f(i, k));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, k| if i == k { T::one() } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Column `k` (0-based) as a vector.
    pub fn column(&self, k: usize) -> ColumnVector<T> {
        ColumnVector::new((0..self.rows).map(|i| self[(i, k)].clone()).collect())
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// The top-left `j x j` block.
    pub fn leading_submatrix(&self, j: usize) -> Result<Self> {
        let n = self.require_square()?;
        if j == 0 || j > n {
            return Err(Error::IndexOutOfRange {
                what: "cut index",
                index: j,
                max: n,
            });
        }
        Ok(Matrix::from_fn(j, j, |i, k| self[(i, k)].clone()))
    }

    /// Copy of a square matrix with column `i` (1-based) replaced by `v`.
    pub fn replace_column(&self, i: usize, v: &ColumnVector<T>) -> Result<Self> {
        let n = self.require_square()?;
        if v.dim() != n {
            return Err(Error::DimensionMismatch(format!(
                "replacement column has {} entries, matrix is {n}x{n}",
                v.dim()
            )));
        }
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange {
                what: "column index",
                index: i,
                max: n,
            });
        }
        let mut out = self.clone();
        for r in 0..n {
            out.data[r * n + i - 1] = v[r].clone();
        }
        Ok(out)
    }

    /// Swaps columns `a` and `b` (0-based).
    pub fn swap_columns(&self, a: usize, b: usize) -> Self {
        let mut out = self.clone();
        for r in 0..self.rows {
            out.data.swap(r * self.cols + a, r * self.cols + b);
        }
        out
    }

    /// Reorders rows so that row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        Matrix::from_fn(self.rows, self.cols, |i, k| self[(perm[i], k)].clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Matrix::from_fn(self.rows, self.cols, |i, k| c.clone() * self[(i, k)].clone())
    }

    pub fn mul(&self, rhs: &Matrix<T>) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, rhs.cols, |i, k| {
            (0..self.cols).fold(T::zero(), |acc, m| {
                acc + self[(i, m)].clone() * rhs[(m, k)].clone()
            })
        }))
    }

    pub fn mul_vec(&self, v: &ColumnVector<T>) -> Result<ColumnVector<T>> {
        if self.cols != v.dim() {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} matrix by vector of dimension {}",
                self.rows,
                self.cols,
                v.dim()
            )));
        }
        Ok(ColumnVector::new(
            (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(v.entries())
                        .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
                })
                .collect(),
        ))
    }

    /// Largest entry magnitude, as a float.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: Tolerance) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| a.approx_eq(b, tol))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, k): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && k < self.cols);
        &self.data[i * self.cols + k]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            f.write_str("[")?;
            for k in 0..self.cols {
                if k > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + k])?;
            }
            f.write_str("]")?;
            if i + 1 < self.rows {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColumnVector<T> {
    entries: Vec<T>,
}

impl<T: Scalar> ColumnVector<T> {
    pub fn new(entries: Vec<T>) -> Self {
        ColumnVector { entries }
    }

    pub fn from_i64(values: &[i64]) -> Self {
        ColumnVector::new(values.iter().map(|&v| T::from_i64(v)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        ColumnVector::new(vec![T::zero(); dim])
    }

    /// Unit vector with a one at 0-based position `i`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = ColumnVector::zeros(dim);
        v.entries[i] = T::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<T> {
        self.entries
    }

    pub fn head(&self, j: usize) -> ColumnVector<T> {
        ColumnVector::new(self.entries[..j].to_vec())
    }

    pub fn sub(&self, rhs: &ColumnVector<T>) -> Result<ColumnVector<T>> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector dimensions {} and {} differ",
                self.dim(),
                rhs.dim()
            )));
        }
        Ok(ColumnVector::new(
            self.entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        ))
    }

    pub fn scale(&self, c: &T) -> Self {
        ColumnVector::new(self.entries.iter().map(|x| c.clone() * x.clone()).collect())
    }

    pub fn permute(&self, perm: &[usize]) -> Self {
        ColumnVector::new(perm.iter().map(|&p| self.entries[p].clone()).collect())
    }

    pub fn norm_inf(&self) -> f64 {
        self.entries.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn approx_eq(&self, other: &Self, tol: Tolerance) -> bool {
        self.dim() == other.dim()
            && self.entries.iter().zip(&other.entries).all(|(a, b)| a.approx_eq(b, tol))
    }
}

impl<T> Index<usize> for ColumnVector<T> {
    type Output = T;

    fn index(&self, i: usize) -> &T {
        &self.entries[i]
    }
}

impl<T: fmt::Display> fmt::Display for ColumnVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// The linear system `X' = R X`: a square transformation matrix and the
/// transformed coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemSpec<T> {
    r: Matrix<T>,
    x_prime: ColumnVector<T>,
}

impl<T: Scalar> SystemSpec<T> {
    pub fn new(r: Matrix<T>, x_prime: ColumnVector<T>) -> Result<Self> {
        let n = r.require_square()?;
        if x_prime.dim() != n {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has {} entries, matrix is {n}x{n}",
                x_prime.dim()
            )));
        }
        Ok(SystemSpec { r, x_prime })
    }

    pub fn r(&self) -> &Matrix<T> {
        &self.r
    }

    pub fn x_prime(&self) -> &ColumnVector<T> {
        &self.x_prime
    }

    pub fn dim(&self) -> usize {
        self.x_prime.dim()
    }

    /// Row `i` of the permuted system is equation `perm[i]` of this one.
    pub fn permute_equations(&self, perm: &[usize]) -> Self {
        SystemSpec {
            r: self.r.permute_rows(perm),
            x_prime: self.x_prime.permute(perm),
        }
    }

    /// Multiplies equation `i` (0-based) through by `c`.
    pub fn scale_equation(&self, i: usize, c: &T) -> Self {
        let n = self.dim();
        let r = Matrix::from_fn(n, n, |row, k| {
            if row == i {
                c.clone() * self.r[(row, k)].clone()
            } else {
                self.r[(row, k)].clone()
            }
        });
        let mut x_prime = self.x_prime.clone();
        x_prime.entries[i] = c.clone() * x_prime.entries[i].clone();
        SystemSpec { r, x_prime }
    }
}

/// A matrix whose scalar kind was decided at run time.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyMatrix {
    Rational(Matrix<Rational>),
    Float(Matrix<f64>),
}

impl AnyMatrix {
    pub fn kind(&self) -> ScalarKind {
        match self {
            AnyMatrix::Rational(_) => ScalarKind::Rational,
            AnyMatrix::Float(_) => ScalarKind::Float,
        }
    }
}

/// Builds a matrix from dynamically typed entries, rejecting mixed kinds.
pub fn make_matrix(rows: usize, cols: usize, entries: Vec<ScalarValue>) -> Result<AnyMatrix> {
    if entries.len() != rows * cols {
        return Err(Error::DimensionMismatch(format!(
            "{rows}x{cols} matrix needs {} entries, got {}",
            rows * cols,
            entries.len()
        )));
    }
    match entries.first().map(ScalarValue::kind) {
        Some(ScalarKind::Rational) => Ok(AnyMatrix::Rational(typed(rows, cols, entries)?)),
        Some(ScalarKind::Float) => Ok(AnyMatrix::Float(typed(rows, cols, entries)?)),
        None => Err(Error::DimensionMismatch("matrix has no entries".into())),
    }
}

fn typed<T: Scalar + FromScalarValue>(
    rows: usize,
    cols: usize,
    entries: Vec<ScalarValue>,
) -> Result<Matrix<T>> {
    let entries = entries
        .into_iter()
        .map(T::from_value)
        .collect::<Result<Vec<_>>>()?;
    Matrix::new(rows, cols, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type Q = Rational;

    fn q(v: i64) -> Q {
        Q::from_i64(v)
    }

    #[test]
    fn make_matrix_smallest_case() {
        let m = make_matrix(1, 1, vec![ScalarValue::Rational(q(5))]).unwrap();
        assert_eq!(m, AnyMatrix::Rational(Matrix::new(1, 1, vec![q(5)]).unwrap()));
    }

    #[test]
    fn make_matrix_chain_block() {
        let entries = [1, -1, 0, 1].map(|v| ScalarValue::Rational(q(v))).to_vec();
        let AnyMatrix::Rational(m) = make_matrix(2, 2, entries).unwrap() else {
            panic!("expected rational matrix");
        };
        assert_eq!(m, Matrix::from_i64_rows(&[&[1, -1], &[0, 1]]).unwrap());
    }

    #[test]
    fn make_matrix_rejects_bad_dimensions() {
        let entries = [1, 2, 3, 4].map(|v| ScalarValue::Rational(q(v))).to_vec();
        assert!(matches!(make_matrix(2, 3, entries), Err(Error::DimensionMismatch(_))));
        assert!(Matrix::<Q>::new(0, 3, vec![]).is_err());
    }

    #[test]
    fn make_matrix_rejects_mixed_kinds() {
        let entries = vec![ScalarValue::Rational(q(1)), ScalarValue::Float(2.0)];
        assert_eq!(make_matrix(1, 2, entries), Err(Error::MixedScalarKinds));
    }

    #[test]
    fn make_matrix_normalizes_rationals() {
        let entries = vec![ScalarValue::Rational(Q::new(4.into(), (-6).into()))];
        let AnyMatrix::Rational(m) = make_matrix(1, 1, entries).unwrap() else {
            panic!()
        };
        assert_eq!(m[(0, 0)], Q::from_ratio(-2, 3));
    }

    #[test]
    fn leading_submatrix_cases() {
        let chain = Matrix::<Q>::from_i64_rows(&[
            &[1, -1, 0, 0],
            &[0, 1, -1, 0],
            &[0, 0, 1, -1],
            &[0, 0, 0, 1],
        ])
        .unwrap();
        assert_eq!(chain.leading_submatrix(4).unwrap(), chain);
        assert_eq!(
            chain.leading_submatrix(3).unwrap(),
            Matrix::from_i64_rows(&[&[1, -1, 0], &[0, 1, -1], &[0, 0, 1]]).unwrap()
        );
        let two = Matrix::<Q>::from_i64_rows(&[&[2]]).unwrap();
        assert_eq!(two.leading_submatrix(1).unwrap(), two);
        assert!(matches!(
            chain.leading_submatrix(0),
            Err(Error::IndexOutOfRange { index: 0, .. })
        ));
        assert!(chain.leading_submatrix(5).is_err());
        let wide = Matrix::<Q>::from_i64_rows(&[&[1, 2]]).unwrap();
        assert!(matches!(wide.leading_submatrix(1), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn replace_column_cases() {
        let id = Matrix::<Q>::identity(2);
        let (a, b) = (q(7), q(-3));
        let v = ColumnVector::new(vec![a.clone(), b.clone()]);
        let out = id.replace_column(1, &v).unwrap();
        assert_eq!(out, Matrix::from_rows(vec![vec![a, q(0)], vec![b, q(1)]]).unwrap());
        assert_eq!(id, Matrix::identity(2), "input must be untouched");

        let m = Matrix::<Q>::from_i64_rows(&[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(m.replace_column(2, &m.column(1)).unwrap(), m);
        assert!(m.replace_column(3, &v).is_err());
        assert!(m.replace_column(1, &ColumnVector::from_i64(&[1])).is_err());
    }

    #[test]
    fn system_requires_matching_dimensions() {
        let r = Matrix::<Q>::identity(3);
        assert!(SystemSpec::new(r.clone(), ColumnVector::from_i64(&[1, 2])).is_err());
        assert!(SystemSpec::new(r, ColumnVector::from_i64(&[1, 2, 3])).is_ok());
        let wide = Matrix::<Q>::from_i64_rows(&[&[1, 2]]).unwrap();
        assert!(SystemSpec::new(wide, ColumnVector::from_i64(&[1])).is_err());
    }

    fn int_matrix(max_n: usize) -> impl Strategy<Value = Matrix<Q>> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(-9i64..=9, n * n)
                .prop_map(move |v| Matrix::new(n, n, v.into_iter().map(q).collect()).unwrap())
        })
    }

    proptest! {
        #[test]
        fn replace_column_restores(m in int_matrix(6), col in 0usize..6, fill in -9i64..=9) {
            let n = m.rows();
            let i = col % n + 1;
            let v = ColumnVector::new(vec![q(fill); n]);
            let original = m.column(i - 1);
            let back = m.replace_column(i, &v).unwrap().replace_column(i, &original).unwrap();
            prop_assert_eq!(back, m);
        }

        #[test]
        fn nested_leading_blocks(m in int_matrix(6), a in 1usize..=6, b in 1usize..=6) {
            let n = m.rows();
            let (j, k) = (a.min(b).min(n), a.max(b).min(n));
            prop_assert_eq!(
                m.leading_submatrix(k).unwrap().leading_submatrix(j).unwrap(),
                m.leading_submatrix(j).unwrap()
            );
        }
    }
}
