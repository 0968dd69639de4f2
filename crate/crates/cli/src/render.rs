use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use xyhecke_core::level::LevelParams;
use xyhecke_core::zlinalg::{AbelianGroup, IntMatrix};

/// Integers that fit in i64 become JSON numbers, others decimal strings.
pub fn int(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

pub fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn matrix(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| ints(&(0..m.cols()).map(|j| m.get(i, j).clone()).collect::<Vec<_>>())).collect())
}

pub fn group(g: &AbelianGroup) -> Value {
    json!({
        "invariant_factors": ints(&g.nontrivial()),
        "order": g.order().map_or(Value::Null, |o| int(&o)),
    })
}

/// A product of cyclic groups: the given orders with 1s dropped, ascending,
/// together with the normalized invariant factors.
pub fn cyclic_product(orders: &[BigInt]) -> Value {
    let mut pres: Vec<BigInt> = orders.iter().filter(|o| **o != BigInt::from(1)).cloned().collect();
    pres.sort();
    let g = AbelianGroup::from_cyclic_orders(orders);
    let mut v = group(&g);
    v["cyclic_orders"] = ints(&pres);
    v
}

pub fn level_fields(lp: &LevelParams) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("q".into(), json!(lp.q()));
    m.insert("a".into(), json!(lp.a()));
    m.insert("b".into(), json!(lp.b()));
    m
}

pub fn matrix_text(m: &IntMatrix) -> String {
    let cells: Vec<Vec<String>> = (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect()).collect();
    let w = cells.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
    cells
        .iter()
        .map(|row| row.iter().map(|c| format!("{:>w$}", c, w = w)).collect::<Vec<_>>().join(" "))
        .map(|r| format!("  [{}]", r))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn group_text(g: &AbelianGroup) -> String {
    let nt = g.nontrivial();
    if nt.is_empty() {
        return "0".into();
    }
    nt.iter().map(|d| if *d == BigInt::from(0) { "Z".to_string() } else { format!("Z/{}", d) }).collect::<Vec<_>>().join(" x ")
}

/// Generic fallback: flat key/value listing of a JSON object.
pub fn pretty_value(v: &Value, indent: usize) -> String {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(m) => m
            .iter()
            .map(|(k, x)| match x {
                Value::Object(_) => format!("{}{}:\n{}", pad, k, pretty_value(x, indent + 2)),
                Value::Array(a) if a.iter().any(|e| e.is_array() || e.is_object()) => {
                    format!("{}{}:\n{}", pad, k, a.iter().map(|e| pretty_value(e, indent + 2)).collect::<Vec<_>>().join("\n"))
                }
                _ => format!("{}{}: {}", pad, k, x),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        Value::Array(a) if a.iter().any(|e| e.is_object()) => a.iter().map(|e| pretty_value(e, indent)).collect::<Vec<_>>().join(&format!("\n{}--\n", pad)),
        _ => format!("{}{}", pad, v),
    }
}
