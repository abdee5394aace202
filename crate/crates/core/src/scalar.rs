//! The number field every routine in this crate is evaluated over.
//!
//! Two kinds are supported: exact rationals ([`Rational`], always kept in
//! lowest terms by `num-rational`) and IEEE-754 doubles. Containers are
//! generic over a single [`Scalar`] type, so a matrix or system can never mix
//! the two. The dynamic [`ScalarValue`] is only used at the boundary where
//! entries arrive untyped (file parsing, [`crate::matrix::make_matrix`]).

use std::fmt::{self, Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarKind {
    Rational,
    Float,
}

impl ScalarKind {
    pub fn name(self) -> &'static str {
        match self {
            ScalarKind::Rational => "rational",
            ScalarKind::Float => "float",
        }
    }
}

impl Display for ScalarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Absolute-or-relative tolerance used when comparing floats.
///
/// Exact scalars ignore it and compare strictly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub const fn new(abs: f64, rel: f64) -> Self {
        Tolerance { abs, rel }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::new(1e-9, 1e-9)
    }
}

/// Field operations plus the handful of kind-specific hooks the algorithms need.
pub trait Scalar:
    Num + Signed + Clone + PartialOrd + Debug + Display + Send + Sync + 'static
{
    const KIND: ScalarKind;

    fn from_i64(value: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Equality under the kind's contract: strict for rationals, `tol` for floats.
    fn approx_eq(&self, other: &Self, tol: Tolerance) -> bool;

    /// Whether a determinant-like quantity should be treated as zero.
    ///
    /// Rationals: exactly zero. Floats: `|self| <= threshold * scale`.
    fn is_negligible(&self, scale: f64, threshold: f64) -> bool;

    fn is_exact() -> bool {
        Self::KIND == ScalarKind::Rational
    }
}

impl Scalar for Rational {
    const KIND: ScalarKind = ScalarKind::Rational;

    fn from_i64(value: i64) -> Self {
        Rational::from_integer(BigInt::from(value))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn approx_eq(&self, other: &Self, _tol: Tolerance) -> bool {
        self == other
    }

    fn is_negligible(&self, _scale: f64, _threshold: f64) -> bool {
        self.is_zero()
    }
}

impl Scalar for f64 {
    const KIND: ScalarKind = ScalarKind::Float;

    fn from_i64(value: i64) -> Self {
        value as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn approx_eq(&self, other: &Self, tol: Tolerance) -> bool {
        let diff = (self - other).abs();
        diff <= tol.abs || diff <= tol.rel * self.abs().max(other.abs())
    }

    fn is_negligible(&self, scale: f64, threshold: f64) -> bool {
        self.abs() <= threshold * scale
    }
}

/// A scalar whose kind is only known at run time.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalarValue {
    Rational(Rational),
    Float(f64),
}

impl ScalarValue {
    pub fn kind(&self) -> ScalarKind {
        match self {
            ScalarValue::Rational(_) => ScalarKind::Rational,
            ScalarValue::Float(_) => ScalarKind::Float,
        }
    }

    /// Parses `"p/q"`, `"p"` (exact) or a decimal literal (float only).
    pub fn parse(text: &str, kind: ScalarKind) -> Result<Self> {
        let text = text.trim();
        match kind {
            ScalarKind::Rational => parse_rational(text).map(ScalarValue::Rational),
            ScalarKind::Float => {
                if text.contains('/') {
                    return Err(Error::Parse(format!(
                        "rational literal {text:?} requires scalar kind \"rational\""
                    )));
                }
                text.parse::<f64>()
                    .map(ScalarValue::Float)
                    .map_err(|_| Error::Parse(format!("invalid float literal {text:?}")))
            }
        }
    }
}

impl From<Rational> for ScalarValue {
    fn from(value: Rational) -> Self {
        ScalarValue::Rational(value)
    }
}

impl From<f64> for ScalarValue {
    fn from(value: f64) -> Self {
        ScalarValue::Float(value)
    }
}

impl Display for ScalarValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarValue::Rational(q) => Display::fmt(q, f),
            ScalarValue::Float(x) => Display::fmt(x, f),
        }
    }
}

/// Converts a dynamic value into the statically chosen scalar type.
pub trait FromScalarValue: Sized {
    fn from_value(value: ScalarValue) -> Result<Self>;
}

impl FromScalarValue for Rational {
    fn from_value(value: ScalarValue) -> Result<Self> {
        match value {
            ScalarValue::Rational(q) => Ok(q),
            ScalarValue::Float(_) => Err(Error::MixedScalarKinds),
        }
    }
}

impl FromScalarValue for f64 {
    fn from_value(value: ScalarValue) -> Result<Self> {
        match value {
            ScalarValue::Float(x) => Ok(x),
            ScalarValue::Rational(_) => Err(Error::MixedScalarKinds),
        }
    }
}

/// Parses an integer or `p/q` string into a normalized rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("invalid rational literal {text:?} (expected integer or \"p/q\")"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let num = BigInt::from_str_radix(num, 10).map_err(|_| bad())?;
    let den = match den {
        Some(d) => BigInt::from_str_radix(d, 10).map_err(|_| bad())?,
        None => BigInt::from(1),
    };
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(num, den))
}
