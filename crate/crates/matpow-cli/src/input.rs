//! Input document parsing: a single JSON object carrying either a
//! matrix or a polynomial, in the exact or floating flavor.
//!
//! Exact entries are integers or strings like "3" and "-7/2"; JSON
//! numbers cannot carry exact rationals, so fractions must be quoted.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;
use serde_json::Value;

use matpow::{Polynomial, Scalar, SquareMatrix};

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDocument {
    #[serde(default)]
    pub matrix: Option<Vec<Vec<Value>>>,
    #[serde(default)]
    pub poly: Option<Vec<Value>>,
    #[serde(default)]
    pub flavor: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Flavor {
    Exact,
    Float,
}

/// The parsed payload in its resolved flavor.
pub enum Document {
    ExactMatrix(SquareMatrix<BigRational>),
    FloatMatrix(SquareMatrix<f64>),
    ExactPoly(Polynomial<BigRational>),
    FloatPoly(Polynomial<f64>),
}

impl Document {
    pub fn flavor(&self) -> Flavor {
        match self {
            Document::ExactMatrix(_) | Document::ExactPoly(_) => Flavor::Exact,
            Document::FloatMatrix(_) | Document::FloatPoly(_) => Flavor::Float,
        }
    }

    pub fn is_matrix(&self) -> bool {
        matches!(self, Document::ExactMatrix(_) | Document::FloatMatrix(_))
    }
}

pub fn parse_document(text: &str, flag_flavor: Option<Flavor>) -> Result<Document, CliError> {
    let raw: RawDocument =
        serde_json::from_str(text).map_err(|e| CliError::parse(format!("invalid JSON: {e}")))?;

    let entries: Vec<&Value> = match (&raw.matrix, &raw.poly) {
        (Some(rows), None) => rows.iter().flatten().collect(),
        (None, Some(coeffs)) => coeffs.iter().collect(),
        (Some(_), Some(_)) => {
            return Err(CliError::parse(
                "document must contain either \"matrix\" or \"poly\", not both",
            ))
        }
        (None, None) => {
            return Err(CliError::parse(
                "document must contain a \"matrix\" or a \"poly\" field",
            ))
        }
    };

    let doc_flavor = match raw.flavor.as_deref() {
        Some("exact") => Some(Flavor::Exact),
        Some("float") => Some(Flavor::Float),
        Some(other) => {
            return Err(CliError::parse(format!(
                "unknown flavor {other:?}; use \"exact\" or \"float\""
            )))
        }
        None => None,
    };
    // Flag beats the document tag; with neither, integers and strings
    // imply exact, any fractional number implies float.
    let flavor = flag_flavor.or(doc_flavor).unwrap_or_else(|| {
        if entries.iter().all(|v| is_exactish(v)) {
            Flavor::Exact
        } else {
            Flavor::Float
        }
    });

    match (raw.matrix, raw.poly, flavor) {
        (Some(rows), _, Flavor::Exact) => {
            let rows = parse_rows(&rows, parse_exact_entry)?;
            Ok(Document::ExactMatrix(
                SquareMatrix::from_rows(rows).map_err(CliError::from)?,
            ))
        }
        (Some(rows), _, Flavor::Float) => {
            let rows = parse_rows(&rows, parse_float_entry)?;
            Ok(Document::FloatMatrix(
                SquareMatrix::from_rows(rows).map_err(CliError::from)?,
            ))
        }
        (_, Some(coeffs), Flavor::Exact) => {
            let low = parse_list(&coeffs, parse_exact_entry)?;
            Ok(Document::ExactPoly(
                Polynomial::from_low_coeffs(low).map_err(CliError::from)?,
            ))
        }
        (_, Some(coeffs), Flavor::Float) => {
            let low = parse_list(&coeffs, parse_float_entry)?;
            Ok(Document::FloatPoly(
                Polynomial::from_low_coeffs(low).map_err(CliError::from)?,
            ))
        }
        _ => unreachable!("validated above"),
    }
}

fn is_exactish(v: &Value) -> bool {
    match v {
        Value::Number(n) => n.is_i64() || n.is_u64(),
        Value::String(_) => true,
        _ => false,
    }
}

fn parse_rows<T>(
    rows: &[Vec<Value>],
    entry: impl Fn(&Value) -> Result<T, CliError>,
) -> Result<Vec<Vec<T>>, CliError> {
    rows.iter().map(|row| parse_list(row, &entry)).collect()
}

fn parse_list<T>(
    values: &[Value],
    entry: impl Fn(&Value) -> Result<T, CliError>,
) -> Result<Vec<T>, CliError> {
    values.iter().map(entry).collect()
}

fn parse_exact_entry(v: &Value) -> Result<BigRational, CliError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigRational::from_integer(BigInt::from(i)))
            } else if let Some(u) = n.as_u64() {
                Ok(BigRational::from_integer(BigInt::from(u)))
            } else {
                Err(CliError::parse(format!(
                    "exact flavor requires integer or rational-string entries, got {n}"
                )))
            }
        }
        Value::String(s) => parse_rational_str(s),
        other => Err(CliError::parse(format!(
            "entries must be numbers or \"p/q\" strings, got {other}"
        ))),
    }
}

fn parse_float_entry(v: &Value) -> Result<f64, CliError> {
    match v {
        Value::Number(n) => n
            .as_f64()
            .ok_or_else(|| CliError::parse(format!("number {n} is not representable as f64"))),
        Value::String(s) => Ok(Scalar::to_f64(&parse_rational_str(s)?)),
        other => Err(CliError::parse(format!(
            "entries must be numbers or \"p/q\" strings, got {other}"
        ))),
    }
}

fn parse_rational_str(s: &str) -> Result<BigRational, CliError> {
    let s = s.trim();
    let bad = |_| CliError::parse(format!("cannot parse {s:?} as an integer or p/q rational"));
    match s.split_once('/') {
        Some((p, q)) => {
            let numer = BigInt::from_str(p.trim()).map_err(bad)?;
            let denom = BigInt::from_str(q.trim()).map_err(bad)?;
            if denom == BigInt::from(0) {
                return Err(CliError::parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(numer, denom))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(bad)?)),
    }
}
