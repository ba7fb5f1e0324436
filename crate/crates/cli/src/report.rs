//! JSON reports written by `--out`.

use serde_json::{json, Map, Value};
use xq_core::quadratic::{Obstruction, QCHomotopy};
use xq_core::sphere::{Axiom, RetractionKey};
use xq_core::{CheckReport, Sampling};

use crate::format::{jints, JInt};

pub const REPORT_VERSION: &str = "1";

/// A report object with the fields every command writes first.
pub fn header(command: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("version".into(), json!(REPORT_VERSION));
    m.insert("command".into(), json!(command));
    m
}

pub fn seed(seed: u64) -> Value {
    json!(JInt::from(&num_bigint::BigInt::from(seed)))
}

pub fn sampling(s: &Sampling) -> Value {
    json!({"seed": seed(s.seed), "samples": s.samples, "max_len": s.max_len})
}

pub fn checks(report: &CheckReport) -> Value {
    Value::Array(
        report
            .checks
            .iter()
            .map(|c| {
                let mut m = Map::new();
                m.insert("id".into(), json!(c.id));
                m.insert("description".into(), json!(c.description));
                m.insert("passed".into(), json!(c.passed));
                m.insert("cases".into(), json!(c.cases));
                if let Some(w) = &c.witness {
                    m.insert("witness".into(), json!(w));
                }
                Value::Object(m)
            })
            .collect(),
    )
}

pub fn summary(report: &CheckReport) -> Value {
    json!({
        "passed": report.passed(),
        "checks": report.checks.len(),
        "failures": report.failures().count(),
    })
}

pub fn witness(h: &QCHomotopy) -> Value {
    json!({
        "alpha2": h.alpha2.iter().map(|v| jints(v)).collect::<Vec<_>>(),
        "alpha3": h.alpha3.iter().map(|v| jints(v)).collect::<Vec<_>>(),
    })
}

pub fn obstruction(o: &Obstruction) -> Value {
    let mut v = serde_json::to_value(o).expect("obstructions serialize");
    if let Value::Object(m) = &mut v {
        m.insert("message".into(), json!(o.to_string()));
    }
    v
}

pub fn key(k: &RetractionKey) -> Value {
    json!({"a": k.a, "b": k.b, "r": k.r})
}

pub fn axioms(axioms: &[Axiom]) -> Value {
    serde_json::to_value(axioms).expect("axioms serialize")
}
