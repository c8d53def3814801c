//! Text and JSON formatting shared by the subcommands.

use num_bigint::BigInt;
use serde_json::{json, Value};
use toric_origami::algebra::Character;

pub fn lattice(x: &[i64]) -> String {
    let parts: Vec<String> = x.iter().map(i64::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Integers that fit in `i64` become JSON numbers, larger ones strings.
pub fn integer(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

/// Terms in display order, each as `{"exponent": [...], "coefficient": c}`.
pub fn terms(c: &Character) -> Value {
    Value::Array(
        c.display_terms().into_iter().map(|(e, k)| json!({ "exponent": e, "coefficient": integer(k) })).collect(),
    )
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
