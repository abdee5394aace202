//! Human-readable affine expressions and their JSON form.

use serde_json::{json, Value};

use super::input::parse_entry;
use super::CliError;
use crate::affine::{AffineSolution, RowPermutation};
use crate::cramer_partial::EliminationTrace;
use crate::error::Error;
use crate::matrix::Matrix;
use crate::scalar::{FromScalarValue, Rational, Scalar};

/// Scalars the CLI can print and round-trip through JSON.
pub trait CliScalar: Scalar + FromScalarValue {
    fn to_json(&self) -> Value;

    /// Text used for a coefficient in front of a variable.
    fn coefficient_text(&self) -> String;
}

impl CliScalar for Rational {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn coefficient_text(&self) -> String {
        if self.is_integer() {
            self.to_string()
        } else {
            format!("({self})")
        }
    }
}

impl CliScalar for f64 {
    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self).map_or(Value::Null, Value::Number)
    }

    fn coefficient_text(&self) -> String {
        self.to_string()
    }
}

/// Variable names: unknowns `x1..xn`, primed `x'1..x'n`.
///
/// `primed_order` relabels the primed variables after equations have been
/// reordered: position `l` prints as `x'{primed_order[l] + 1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Labels {
    pub unknown: String,
    pub primed: String,
    pub primed_order: Option<RowPermutation>,
}

impl Default for Labels {
    fn default() -> Self {
        Labels {
            unknown: "x".into(),
            primed: "x'".into(),
            primed_order: None,
        }
    }
}

impl Labels {
    pub fn unknown(&self, i: usize) -> String {
        format!("{}{}", self.unknown, i + 1)
    }

    pub fn primed(&self, l: usize) -> String {
        let index = self
            .primed_order
            .as_ref()
            .map_or(l, |perm| perm.as_slice()[l]);
        format!("{}{}", self.primed, index + 1)
    }
}

/// `c1·v1 + c2·v2 - c3·v3`, skipping zero terms; `0` when all vanish.
pub fn linear_combination<T: CliScalar>(terms: &[(T, String)]) -> String {
    let mut out = String::new();
    for (c, var) in terms.iter().filter(|(c, _)| !c.is_zero()) {
        let negative = c.is_negative();
        let magnitude = c.abs().coefficient_text();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&magnitude);
        out.push('·');
        out.push_str(var);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// One line per unknown, `x_i = ...`.
pub fn affine_expressions<T: CliScalar>(sol: &AffineSolution<T>, labels: &Labels) -> Vec<String> {
    let j = sol.cut();
    (0..j)
        .map(|i| {
            let mut terms: Vec<(T, String)> = (0..j)
                .map(|l| (sol.prime_coeffs()[(i, l)].clone(), labels.primed(l)))
                .collect();
            terms.extend(
                (0..sol.n() - j).map(|t| (sol.tail_coeffs()[(i, t)].clone(), labels.unknown(j + t))),
            );
            format!("{} = {}", labels.unknown(i), linear_combination(&terms))
        })
        .collect()
}

fn matrix_json<T: CliScalar>(m: &Matrix<T>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(CliScalar::to_json).collect()))
            .collect(),
    )
}

fn row_order_json(labels: &Labels, n: usize) -> Value {
    let order = labels
        .primed_order
        .as_ref()
        .map_or_else(|| (1..=n).collect(), RowPermutation::one_based);
    json!(order)
}

pub fn affine_json<T: CliScalar>(sol: &AffineSolution<T>, labels: &Labels) -> Value {
    json!({
        "kind": "partial",
        "scalar": T::KIND.name(),
        "n": sol.n(),
        "cut": sol.cut(),
        "d_j": sol.d_j().to_json(),
        "prime_coeffs": matrix_json(sol.prime_coeffs()),
        "tail_coeffs": matrix_json(sol.tail_coeffs()),
        "row_order": row_order_json(labels, sol.n()),
        "labels": { "unknown": labels.unknown, "primed": labels.primed },
        "expressions": affine_expressions(sol, labels),
    })
}

pub fn trace_json<T: CliScalar>(trace: &EliminationTrace<T>, labels: &Labels, n: usize) -> Value {
    json!({
        "kind": "trace",
        "scalar": T::KIND.name(),
        "n": n,
        "row_order": row_order_json(labels, n),
        "steps": trace.steps.iter().map(|s| json!({
            "j": s.j,
            "minor": s.minor.to_json(),
            "solution": affine_json(&s.solution, labels),
        })).collect::<Vec<_>>(),
    })
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    v.get(key)
        .ok_or_else(|| CliError::from(Error::Parse(format!("missing field {key:?}"))))
}

fn count(v: &Value, key: &str) -> Result<usize, CliError> {
    field(v, key)?
        .as_u64()
        .map(|c| c as usize)
        .ok_or_else(|| CliError::from(Error::Parse(format!("field {key:?} must be a count"))))
}

fn matrix_from_json<T: CliScalar>(v: &Value, rows: usize, cols: usize, key: &str) -> Result<Matrix<T>, CliError> {
    let bad = || CliError::from(Error::Parse(format!("field {key:?} must be a {rows}x{cols} array")));
    let outer = v.as_array().ok_or_else(bad)?;
    if outer.len() != rows {
        return Err(bad());
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for (i, row) in outer.iter().enumerate() {
        let row = row.as_array().filter(|r| r.len() == cols).ok_or_else(bad)?;
        for (k, x) in row.iter().enumerate() {
            entries.push(T::from_value(parse_entry(x, T::KIND, &format!("{key}[{}][{}]", i + 1, k + 1))?)?);
        }
    }
    Ok(Matrix::from_fn(rows, cols, |i, k| entries[i * cols + k].clone()))
}

/// Inverse of [`affine_json`].
pub fn affine_from_json<T: CliScalar>(v: &Value) -> Result<(AffineSolution<T>, Labels), CliError> {
    let scalar = field(v, "scalar")?.as_str().unwrap_or_default();
    if scalar != T::KIND.name() {
        return Err(Error::MixedScalarKinds.into());
    }
    let n = count(v, "n")?;
    let cut = count(v, "cut")?;
    let d_j = T::from_value(parse_entry(field(v, "d_j")?, T::KIND, "d_j")?)?;
    let prime = matrix_from_json(field(v, "prime_coeffs")?, cut, cut, "prime_coeffs")?;
    let tail = matrix_from_json(field(v, "tail_coeffs")?, cut, n.saturating_sub(cut), "tail_coeffs")?;
    let order: Vec<usize> = serde_json::from_value(field(v, "row_order")?.clone())
        .map_err(|e| CliError::from(Error::Parse(format!("row_order: {e}"))))?;
    let perm = RowPermutation::from_vec(order.iter().map(|p| p.saturating_sub(1)).collect())?;
    let names = field(v, "labels")?;
    let text = |key: &str| -> Result<String, CliError> {
        Ok(field(names, key)?.as_str().unwrap_or_default().to_string())
    };
    let labels = Labels {
        unknown: text("unknown")?,
        primed: text("primed")?,
        primed_order: (!perm.is_identity()).then_some(perm),
    };
    Ok((AffineSolution::new(n, d_j, prime, tail)?, labels))
}
