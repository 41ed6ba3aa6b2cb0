//! JSON and DOT emission helpers with deterministic field ordering.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use twobridge::cyclegraph::{blocks, segments, IncrementalCycle};
use twobridge::intlinalg::QuotientOrder;
use twobridge::pairs::CoprimePair;
use twobridge::words::SWord;

/// Big integers become JSON numbers when they fit in 64 bits and decimal
/// strings otherwise.
pub fn bigint_json(v: &BigInt) -> Value {
    match i64::try_from(v.clone()) {
        Ok(n) => json!(n),
        Err(_) => json!(v.to_string()),
    }
}

pub fn pair_json(p: &CoprimePair) -> Value {
    json!({ "p": p.p(), "q": p.q() })
}

pub fn word_json(w: &SWord) -> Value {
    Value::Array(
        w.letters()
            .iter()
            .map(|l| json!([l.subscript, l.exponent]))
            .collect(),
    )
}

pub fn poly_json(coeffs: &[BigInt]) -> Value {
    Value::Array(coeffs.iter().map(bigint_json).collect())
}

pub fn index_json(q: &QuotientOrder) -> Value {
    match q {
        QuotientOrder::Finite(n) => bigint_json(n),
        QuotientOrder::Infinite => json!("infinite"),
    }
}

pub fn object(fields: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in fields {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

/// DOT rendering of an incremental cycle: vertices labelled by grading, with
/// summit/bottom/leading/trailing annotations and an optional bold arc.
pub fn cycle_dot(name: &str, cycle: &IncrementalCycle, bold_edges: &[usize]) -> String {
    let n = cycle.len();
    let summits = cycle.summits();
    let bottoms = cycle.bottoms();
    let dec = segments(cycle);
    let _ = blocks(&dec);
    let long = dec.long_len();
    let mut leading = Vec::new();
    let mut trailing = Vec::new();
    if long != dec.short_len() {
        for s in &dec.segments {
            if s.len == long {
                trailing.push(s.start_edge % n);
                leading.push((s.start_edge + s.len) % n);
            }
        }
    }
    let mut out = String::new();
    out.push_str(&format!("digraph {name} {{\n"));
    out.push_str("  rankdir=LR;\n  node [shape=circle, fontsize=10];\n");
    for i in 0..n {
        let mut tags = Vec::new();
        let mut attrs = Vec::new();
        if summits.contains(&i) {
            tags.push("summit");
            attrs.push("color=red, penwidth=2.0");
        }
        if bottoms.contains(&i) {
            tags.push("bottom");
            attrs.push("color=blue, penwidth=2.0");
        }
        if leading.contains(&i) {
            tags.push("leading");
        }
        if trailing.contains(&i) {
            tags.push("trailing");
        }
        let label = if tags.is_empty() {
            format!("P{i}\\ngr={}", cycle.grading(i))
        } else {
            format!("P{i}\\ngr={}\\n{}", cycle.grading(i), tags.join(","))
        };
        if attrs.is_empty() {
            out.push_str(&format!("  v{i} [label=\"{label}\"];\n"));
        } else {
            out.push_str(&format!("  v{i} [label=\"{label}\", {}];\n", attrs.join(", ")));
        }
    }
    for i in 0..n {
        let sign = if cycle.edge_sign(i) > 0 { "+1" } else { "-1" };
        if bold_edges.contains(&i) {
            out.push_str(&format!(
                "  v{i} -> v{} [label=\"{sign}\", style=bold];\n",
                (i + 1) % n
            ));
        } else {
            out.push_str(&format!("  v{i} -> v{} [label=\"{sign}\"];\n", (i + 1) % n));
        }
    }
    out.push_str("}\n");
    out
}
