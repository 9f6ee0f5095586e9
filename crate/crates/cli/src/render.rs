use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use lambda3_core::{Subspace, TorsionGroup};

pub fn big(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

pub fn factors(g: &TorsionGroup) -> Value {
    Value::Array(g.invariant_factors().iter().map(big).collect())
}

pub fn group_text(g: &TorsionGroup) -> String {
    if g.is_trivial() {
        return "trivial".into();
    }
    g.invariant_factors()
        .iter()
        .map(|d| format!("Z/{d}"))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Canonical basis rows, entries in `0..p`.
pub fn basis(s: &Subspace) -> Value {
    json!(s.basis())
}

pub fn basis_text(s: &Subspace) -> String {
    if s.dim() == 0 {
        return "span{}".into();
    }
    let rows: Vec<String> = s
        .basis()
        .iter()
        .map(|r| {
            format!(
                "({})",
                r.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect();
    format!("span{{{}}}", rows.join(", "))
}

/// One compact JSON record per line.
pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("serialisable");
    s.push('\n');
    s
}
