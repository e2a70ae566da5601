//! The JSON shapes shared by the library and the command line.
//!
//! ```text
//! Series     {"max_degree": 3, "terms": {"": "1", "01": "-2/3"}}
//! Series2    {"max_degree": 3, "e1": {"": "1"}, "e2": {"1": "1"}}
//! Signal     {"h": 0.001, "values": [1.0, 1.0]}
//! Trajectory {"t": [...], "y": [...]}
//! ```
//!
//! Words are spelled over `'0'`/`'1'` with `""` for the empty word. Parsing
//! is strict: a word past the truncation degree is an error, not a silent
//! projection.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::series::{parse_coeff, Series};
use crate::series2::Series2;
use crate::word::Word;

pub fn series_terms_to_json(s: &Series) -> Value {
    let mut m = Map::new();
    for (w, c) in s.terms() {
        m.insert(w.to_string(), Value::String(c.to_string()));
    }
    Value::Object(m)
}

pub fn series_to_json(s: &Series) -> Value {
    json!({ "max_degree": s.max_degree(), "terms": series_terms_to_json(s) })
}

pub fn series2_to_json(s: &Series2) -> Value {
    json!({
        "max_degree": s.max_degree(),
        "e1": series_terms_to_json(s.c1()),
        "e2": series_terms_to_json(s.c2()),
    })
}

fn max_degree(v: &Value) -> Result<u32> {
    let d = v
        .get("max_degree")
        .ok_or_else(|| Error::Parse("missing field \"max_degree\"".into()))?;
    d.as_u64()
        .and_then(|d| u32::try_from(d).ok())
        .ok_or_else(|| Error::Parse(format!("\"max_degree\" must be a non-negative integer, got {d}")))
}

/// Reads a `{"<word>": "<rational>"}` map; `bound` is the largest allowed
/// weighted degree.
fn terms_from_json(v: &Value, field: &str, max: u32, bound: i64) -> Result<Series> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse(format!("\"{field}\" must be an object of word: rational")))?;
    let mut s = Series::zero(max);
    for (k, c) in obj {
        let w: Word = k
            .parse()
            .map_err(|e| Error::Parse(format!("in \"{field}\", key {k:?}: {e}")))?;
        if i64::from(w.wdeg()) > bound {
            return Err(Error::Parse(format!(
                "in \"{field}\", word {k:?} has weighted degree {} above the allowed {bound}",
                w.wdeg()
            )));
        }
        let text = match c {
            Value::String(t) => t.clone(),
            Value::Number(n) if n.is_i64() => n.to_string(),
            _ => {
                return Err(Error::Parse(format!(
                    "in \"{field}\", word {k:?}: coefficient must be a string \"p\" or \"p/q\""
                )))
            }
        };
        let c = parse_coeff(&text).map_err(|e| Error::Parse(format!("in \"{field}\", word {k:?}: {e}")))?;
        s.add_term(w, c);
    }
    Ok(s)
}

pub fn series_from_json(v: &Value) -> Result<Series> {
    let max = max_degree(v)?;
    let terms = v
        .get("terms")
        .ok_or_else(|| Error::Parse("missing field \"terms\"".into()))?;
    terms_from_json(terms, "terms", max, i64::from(max))
}

pub fn series2_from_json(v: &Value) -> Result<Series2> {
    let max = max_degree(v)?;
    let empty = Value::Object(Map::new());
    let e1 = terms_from_json(v.get("e1").unwrap_or(&empty), "e1", max, i64::from(max))?;
    let e2 = terms_from_json(v.get("e2").unwrap_or(&empty), "e2", max, i64::from(max) - 1)?;
    Series2::new(e1, e2)
}

/// Parses JSON text, reporting line and column on syntax errors.
pub fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("invalid JSON at line {}, column {}: {e}", e.line(), e.column())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_round_trip() {
        let s = Series::from_ints(3, &[("", 1), ("01", -2), ("1", 5)]).unwrap();
        let v = series_to_json(&s);
        assert_eq!(v, json!({"max_degree": 3, "terms": {"": "1", "1": "5", "01": "-2"}}));
        assert_eq!(series_from_json(&v).unwrap(), s);
    }

    #[test]
    fn series2_round_trip() {
        let s = Series2::new(
            Series::from_ints(4, &[("", 1)]).unwrap(),
            Series::from_ints(4, &[("01", 1)]).unwrap(),
        )
        .unwrap();
        let v = series2_to_json(&s);
        assert_eq!(series2_from_json(&v).unwrap(), s);
    }

    #[test]
    fn rationals_and_errors() {
        let v = json!({"max_degree": 2, "terms": {"1": "-3/6"}});
        let s = series_from_json(&v).unwrap();
        assert_eq!(s.coefficient_at(&"1".parse().unwrap()).to_string(), "-1/2");
        assert!(series_from_json(&json!({"max_degree": 2, "terms": {"00": "1"}})).is_err());
        assert!(series_from_json(&json!({"max_degree": 2, "terms": {"2": "1"}})).is_err());
        assert!(series_from_json(&json!({"terms": {}})).is_err());
        // channel 2 stops one degree early
        assert!(series2_from_json(&json!({"max_degree": 2, "e2": {"0": "1"}})).is_err());
        assert!(series2_from_json(&json!({"max_degree": 2, "e2": {"1": "1"}})).is_ok());
    }

    #[test]
    fn syntax_errors_carry_position() {
        let e = parse_value("{\n  \"a\": }").unwrap_err();
        assert!(e.to_string().contains("line 2"), "{e}");
    }
}
