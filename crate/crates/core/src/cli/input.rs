//! System and model files.
//!
//! Both are JSON documents. A system file:
//!
//! ```json
//! { "scalar": "rational", "n": 2, "matrix": [[1, -1], [0, 1]], "rhs": ["1/2", 3] }
//! ```
//!
//! `scalar` defaults to `"rational"`; `n` is optional but must agree with
//! the matrix when present. In rational mode entries are integers or `"p/q"`
//! strings; bare non-integer numbers are rejected so nothing passes through
//! a float. In float mode entries are numbers or decimal strings.
//!
//! A model file:
//!
//! ```json
//! { "model": "chain", "masses": [1, 2, 3], "acceleration": 2, "scalar": "rational" }
//! ```

use std::path::Path;

use serde_json::{Map, Value};

use super::CliError;
use crate::error::Error;
use crate::matrix::{ColumnVector, Matrix, SystemSpec};
use crate::models::ChainSpec;
use crate::scalar::{FromScalarValue, Rational, Scalar, ScalarKind, ScalarValue};

#[derive(Debug, Clone, PartialEq)]
pub enum LoadedSystem {
    Rational(SystemSpec<Rational>),
    Float(SystemSpec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum LoadedModel {
    Rational(ChainSpec<Rational>),
    Float(ChainSpec<f64>),
}

fn parse_error(msg: impl Into<String>) -> CliError {
    CliError::from(Error::Parse(msg.into()))
}

fn dimension_error(msg: impl Into<String>) -> CliError {
    CliError::from(Error::DimensionMismatch(msg.into()))
}

pub fn read_document(path: &Path) -> Result<Map<String, Value>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| parse_error(format!("cannot read {}: {e}", path.display())))?;
    parse_document(&text)
}

pub fn parse_document(text: &str) -> Result<Map<String, Value>, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        parse_error(format!("line {}, column {}: {e}", e.line(), e.column()))
    })?;
    match value {
        Value::Object(map) => Ok(map),
        _ => Err(parse_error("top level must be a JSON object")),
    }
}

fn check_keys(doc: &Map<String, Value>, allowed: &[&str]) -> Result<(), CliError> {
    match doc.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(parse_error(format!(
            "unknown field {k:?} (expected one of {})",
            allowed.join(", ")
        ))),
        None => Ok(()),
    }
}

fn scalar_kind(doc: &Map<String, Value>, forced: Option<ScalarKind>) -> Result<ScalarKind, CliError> {
    let declared = match doc.get("scalar") {
        None => ScalarKind::Rational,
        Some(Value::String(s)) if s == "rational" => ScalarKind::Rational,
        Some(Value::String(s)) if s == "float" => ScalarKind::Float,
        Some(other) => {
            return Err(parse_error(format!(
                "field \"scalar\" must be \"rational\" or \"float\", got {other}"
            )))
        }
    };
    Ok(forced.unwrap_or(declared))
}

/// Reads one entry under the chosen kind. `at` names it for diagnostics.
pub fn parse_entry(value: &Value, kind: ScalarKind, at: &str) -> Result<ScalarValue, CliError> {
    let located = |e: Error| match e {
        Error::Parse(msg) => parse_error(format!("{at}: {msg}")),
        other => CliError::from(other),
    };
    match (value, kind) {
        (Value::String(s), _) => ScalarValue::parse(s, kind).map_err(located),
        (Value::Number(num), ScalarKind::Rational) => {
            let text = num.to_string();
            if text.contains(['.', 'e', 'E']) {
                return Err(parse_error(format!(
                    "{at}: bare number {text} is not an integer; write rationals as \"p/q\" strings"
                )));
            }
            ScalarValue::parse(&text, kind).map_err(located)
        }
        (Value::Number(num), ScalarKind::Float) => num
            .as_f64()
            .map(ScalarValue::Float)
            .ok_or_else(|| parse_error(format!("{at}: {num} is not representable as a float"))),
        (other, _) => Err(parse_error(format!(
            "{at}: expected a number or string, got {other}"
        ))),
    }
}

fn typed_entry<T: Scalar + FromScalarValue>(
    value: &Value,
    kind: ScalarKind,
    at: &str,
) -> Result<T, CliError> {
    Ok(T::from_value(parse_entry(value, kind, at)?)?)
}

fn array<'a>(doc: &'a Map<String, Value>, key: &str) -> Result<&'a Vec<Value>, CliError> {
    match doc.get(key) {
        Some(Value::Array(items)) => Ok(items),
        Some(other) => Err(parse_error(format!("field {key:?} must be an array, got {other}"))),
        None => Err(parse_error(format!("missing field {key:?}"))),
    }
}

pub fn load_system(path: &Path, forced: Option<ScalarKind>) -> Result<LoadedSystem, CliError> {
    system_from_document(&read_document(path)?, forced)
}

pub fn system_from_document(
    doc: &Map<String, Value>,
    forced: Option<ScalarKind>,
) -> Result<LoadedSystem, CliError> {
    check_keys(doc, &["scalar", "n", "matrix", "rhs"])?;
    let kind = scalar_kind(doc, forced)?;
    Ok(match kind {
        ScalarKind::Rational => LoadedSystem::Rational(typed_system(doc, kind)?),
        ScalarKind::Float => LoadedSystem::Float(typed_system(doc, kind)?),
    })
}

fn typed_system<T: Scalar + FromScalarValue>(
    doc: &Map<String, Value>,
    kind: ScalarKind,
) -> Result<SystemSpec<T>, CliError> {
    let rows = array(doc, "matrix")?;
    let rhs = array(doc, "rhs")?;
    let n = rows.len();
    if n == 0 {
        return Err(dimension_error("matrix has no rows"));
    }
    if let Some(declared) = doc.get("n") {
        let declared = declared
            .as_u64()
            .ok_or_else(|| parse_error(format!("field \"n\" must be a positive integer, got {declared}")))?;
        if declared as usize != n {
            return Err(dimension_error(format!("n = {declared} but matrix has {n} rows")));
        }
    }
    let mut entries = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        let Value::Array(row) = row else {
            return Err(parse_error(format!("matrix row {} must be an array", i + 1)));
        };
        if row.len() != n {
            return Err(dimension_error(format!(
                "matrix row {} has {} entries, expected {n}",
                i + 1,
                row.len()
            )));
        }
        for (k, v) in row.iter().enumerate() {
            entries.push(typed_entry(v, kind, &format!("matrix[{}][{}]", i + 1, k + 1))?);
        }
    }
    if rhs.len() != n {
        return Err(dimension_error(format!("rhs has {} entries, expected {n}", rhs.len())));
    }
    let rhs = rhs
        .iter()
        .enumerate()
        .map(|(i, v)| typed_entry(v, kind, &format!("rhs[{}]", i + 1)))
        .collect::<Result<Vec<T>, _>>()?;
    Ok(SystemSpec::new(Matrix::new(n, n, entries)?, ColumnVector::new(rhs))?)
}

pub fn load_model(path: &Path, forced: Option<ScalarKind>) -> Result<LoadedModel, CliError> {
    model_from_document(&read_document(path)?, forced)
}

pub fn model_from_document(
    doc: &Map<String, Value>,
    forced: Option<ScalarKind>,
) -> Result<LoadedModel, CliError> {
    check_keys(doc, &["model", "masses", "acceleration", "scalar"])?;
    match doc.get("model") {
        Some(Value::String(s)) if s == "chain" => {}
        Some(other) => return Err(parse_error(format!("unsupported model {other}; only \"chain\" is known"))),
        None => return Err(parse_error("missing field \"model\"")),
    }
    let kind = scalar_kind(doc, forced)?;
    Ok(match kind {
        ScalarKind::Rational => LoadedModel::Rational(typed_chain(doc, kind)?),
        ScalarKind::Float => LoadedModel::Float(typed_chain(doc, kind)?),
    })
}

fn typed_chain<T: Scalar + FromScalarValue>(
    doc: &Map<String, Value>,
    kind: ScalarKind,
) -> Result<ChainSpec<T>, CliError> {
    let masses = array(doc, "masses")?
        .iter()
        .enumerate()
        .map(|(i, v)| typed_entry(v, kind, &format!("masses[{}]", i + 1)))
        .collect::<Result<Vec<T>, _>>()?;
    let acceleration = doc
        .get("acceleration")
        .ok_or_else(|| parse_error("missing field \"acceleration\""))?;
    let acceleration = typed_entry(acceleration, kind, "acceleration")?;
    Ok(ChainSpec::new(masses, acceleration)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::ExitStatus;

    fn system(text: &str) -> Result<LoadedSystem, CliError> {
        system_from_document(&parse_document(text)?, None)
    }

    #[test]
    fn reads_rational_system() {
        let loaded = system(r#"{"n": 2, "matrix": [[1, "-1"], [0, "2/4"]], "rhs": ["3/6", 7]}"#).unwrap();
        let LoadedSystem::Rational(sys) = loaded else { panic!() };
        assert_eq!(sys.r()[(1, 1)], Rational::from_ratio(1, 2));
        assert_eq!(sys.x_prime()[0], Rational::from_ratio(1, 2));
    }

    #[test]
    fn reads_float_system_and_override() {
        let text = r#"{"scalar": "float", "matrix": [[0.5, 1], [2, "4.25"]], "rhs": [1, 2]}"#;
        let LoadedSystem::Float(sys) = system(text).unwrap() else { panic!() };
        assert_eq!(sys.r()[(1, 1)], 4.25);
        let doc = parse_document(r#"{"matrix": [[1, "1/2"], [0, 1]], "rhs": [1, 2]}"#).unwrap();
        assert!(matches!(
            system_from_document(&doc, Some(ScalarKind::Float)),
            Err(e) if e.status == ExitStatus::Parse
        ));
        assert!(matches!(
            system_from_document(&doc, Some(ScalarKind::Rational)),
            Ok(LoadedSystem::Rational(_))
        ));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = system("{\n  \"matrix\": [[1, 2],\n  [3 4]]\n}").unwrap_err();
        assert_eq!(err.status, ExitStatus::Parse);
        assert!(err.message.contains("line 3"), "{}", err.message);
        assert!(err.message.contains("column"), "{}", err.message);
    }

    #[test]
    fn rational_mode_rejects_decimals() {
        let err = system(r#"{"matrix": [[1.5]], "rhs": [1]}"#).unwrap_err();
        assert_eq!(err.status, ExitStatus::Parse);
        assert!(err.message.contains("matrix[1][1]"));
    }

    #[test]
    fn dimension_problems() {
        for text in [
            r#"{"matrix": [[1, 2], [3]], "rhs": [1, 2]}"#,
            r#"{"matrix": [[1, 2], [3, 4]], "rhs": [1]}"#,
            r#"{"n": 3, "matrix": [[1, 2], [3, 4]], "rhs": [1, 2]}"#,
            r#"{"matrix": [], "rhs": []}"#,
        ] {
            assert_eq!(system(text).unwrap_err().status, ExitStatus::Dimension, "{text}");
        }
    }

    #[test]
    fn structural_problems() {
        for text in [
            r#"[1, 2]"#,
            r#"{"matrix": [[1]]}"#,
            r#"{"matrix": [[1]], "rhs": [1], "extra": 0}"#,
            r#"{"scalar": "complex", "matrix": [[1]], "rhs": [1]}"#,
            r#"{"matrix": [[true]], "rhs": [1]}"#,
            r#"{"matrix": [["1/0"]], "rhs": [1]}"#,
        ] {
            assert_eq!(system(text).unwrap_err().status, ExitStatus::Parse, "{text}");
        }
    }

    #[test]
    fn big_integers_stay_exact() {
        let text = r#"{"matrix": [[123456789012345678901234567890]], "rhs": [1]}"#;
        let LoadedSystem::Rational(sys) = system(text).unwrap() else { panic!() };
        assert_eq!(sys.r()[(0, 0)].to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn models() {
        let model = |t: &str| model_from_document(&parse_document(t)?, None);
        let LoadedModel::Rational(spec) =
            model(r#"{"model": "chain", "masses": [1, "3/2"], "acceleration": 2}"#).unwrap()
        else {
            panic!()
        };
        assert_eq!(spec.masses()[1], Rational::from_ratio(3, 2));
        assert!(matches!(
            model(r#"{"model": "chain", "masses": [1.5], "acceleration": 2, "scalar": "float"}"#),
            Ok(LoadedModel::Float(_))
        ));
        for text in [
            r#"{"model": "chain", "masses": [], "acceleration": 2}"#,
            r#"{"model": "chain", "masses": [1, -2], "acceleration": 2}"#,
            r#"{"model": "circuit", "masses": [1], "acceleration": 2}"#,
            r#"{"model": "chain", "masses": [1]}"#,
        ] {
            assert_eq!(model(text).unwrap_err().status, ExitStatus::Parse, "{text}");
        }
    }
}
