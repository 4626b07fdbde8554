//! Deterministic output formatting: fixed CSV column orders, sorted JSON
//! keys, floats always printed with six decimals.

use serde_json::Value;

/// Every float that reaches the user goes through this.
pub fn f6(x: f64) -> String {
    format!("{x:.6}")
}

/// serde_json's default map is a BTreeMap, so keys come out sorted; this
/// just settles on pretty printing plus a trailing newline.
pub fn json_doc(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value is always serializable");
    s.push('\n');
    s
}

pub fn csv(header: &str, rows: &[String]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(header);
    out.push('\n');
    for r in rows {
        out.push_str(r);
        out.push('\n');
    }
    out
}
