//! JSON rendering of exact and floating results.
//!
//! Exact integers that fit a JSON-safe i64 print as numbers; anything
//! larger, and every non-integer rational, prints as a string in full
//! decimal or "p/q" form so no precision is ever lost on output.

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use matpow::SquareMatrix;

/// Number when faithful as i64, string otherwise.
pub fn rational_value(v: &BigRational) -> Value {
    if v.is_integer() {
        let n = v.to_integer();
        if let Some(i) = n.to_i64() {
            return json!(i);
        }
        return json!(n.to_string());
    }
    json!(format!("{}/{}", v.numer(), v.denom()))
}

/// Always a string; the coefficient listing format for exact output.
pub fn rational_string(v: &BigRational) -> Value {
    if v.is_integer() {
        json!(v.to_integer().to_string())
    } else {
        json!(format!("{}/{}", v.numer(), v.denom()))
    }
}

pub fn exact_matrix_value(m: &SquareMatrix<BigRational>) -> Value {
    let k = m.dim();
    Value::Array(
        (0..k)
            .map(|i| Value::Array((0..k).map(|j| rational_value(m.entry(i, j))).collect()))
            .collect(),
    )
}

pub fn float_matrix_value(m: &SquareMatrix<f64>) -> Value {
    let k = m.dim();
    Value::Array(
        (0..k)
            .map(|i| Value::Array((0..k).map(|j| json!(m.entry(i, j))).collect()))
            .collect(),
    )
}

/// Compact by default; `pretty` switches to indented output.
pub fn emit(value: &Value, pretty: bool) {
    if pretty {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
    } else {
        println!("{}", serde_json::to_string(value).expect("serializable"));
    }
}
