//! Loading inputs and rendering outputs.

use std::fs;
use std::path::Path;

use serde_json::{json, Map, Value};
use superklr_core::basis::MonomialLabel;
use superklr_core::qpi::big_to_json;
use superklr_core::{CartanConfig, CartanSuperdatum, LaurentPolynomial, QPiPolynomial, ValidationReport, WeightSeq};

use crate::CliError;

pub const SCHEMA_VERSION: u64 = 1;

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn load_datum(path: &Path) -> Result<(CartanSuperdatum, ValidationReport), CliError> {
    let config = CartanConfig::from_json(&read_text(path)?)?;
    Ok(config.validate()?)
}

pub fn poly_json(p: &QPiPolynomial) -> Value {
    let mut v = p.to_json();
    v["text"] = Value::String(p.to_string());
    v
}

/// `{"terms":[{"q":e,"coeff":c},...]}`, descending in `q`.
pub fn laurent_json(p: &LaurentPolynomial) -> Value {
    let mut terms: Vec<(i64, Value)> = p.terms().map(|(e, c)| (e, big_to_json(c))).collect();
    terms.sort_by_key(|t| std::cmp::Reverse(t.0));
    let terms: Vec<Value> = terms.into_iter().map(|(e, c)| json!({"q": e, "coeff": c})).collect();
    json!({"terms": terms, "text": p.to_string()})
}

pub fn label_json(l: &MonomialLabel) -> Value {
    json!({
        "label": l.render(),
        "exponents": l.exponents,
        "perm": l.perm.to_string(),
        "degree": l.degree,
        "parity": l.parity.name(),
    })
}

pub fn label_line(l: &MonomialLabel) -> String {
    format!("{}  (deg {}, {})", l.render(), l.degree, l.parity.name())
}

pub fn seq_text(datum: &CartanSuperdatum, nu: &WeightSeq) -> String {
    datum.render_seq(nu)
}

/// Prefix an object with the schema version, keeping insertion order.
pub fn document(command: &str, body: Value) -> Value {
    let mut map = Map::new();
    map.insert("schema".into(), json!(SCHEMA_VERSION));
    map.insert("command".into(), json!(command));
    if let Value::Object(rest) = body {
        map.extend(rest);
    }
    Value::Object(map)
}

pub fn error_document(code: &str, message: &str) -> Value {
    json!({"schema": SCHEMA_VERSION, "error": {"code": code, "message": message}})
}
