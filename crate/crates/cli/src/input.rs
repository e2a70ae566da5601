//! Command-line operands.
//!
//! An operand is a path to a file, inline JSON in the shared formats, or a
//! short algebraic form:
//!
//! ```text
//! series   2*x0x1 - 1/2 + x1
//! pair     [1, x1]
//! H        x1:1*:2        (product of generator tokens)
//! ```
//!
//! Short forms carry no degree of their own and take `--degree`.

use std::fs;
use std::path::Path;

use fpg_core::chenfliess::Signal;
use fpg_core::error::{Error, Result};
use fpg_core::hopf::{Generator, HElement, Monomial};
use fpg_core::json::{parse_value, series2_from_json, series_from_json};
use fpg_core::series::{parse_coeff, Coeff, Series};
use fpg_core::series2::{GroupElement, LieElement, Series2};
use fpg_core::word::Word;
use serde_json::Value;

/// File contents if `arg` names a file, otherwise `arg` itself.
fn text_of(arg: &str) -> Result<String> {
    let p = Path::new(arg);
    if p.is_file() {
        fs::read_to_string(p).map_err(|e| Error::Parse(format!("{arg}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn json_of(text: &str) -> Option<Result<Value>> {
    text.trim_start().starts_with('{').then(|| parse_value(text))
}

pub fn series(arg: &str, degree: u32) -> Result<Series> {
    let text = text_of(arg)?;
    match json_of(&text) {
        Some(v) => series_from_json(&v?),
        None => short_series(&text, degree),
    }
}

pub fn series2(arg: &str, degree: u32) -> Result<Series2> {
    let text = text_of(arg)?;
    if let Some(v) = json_of(&text) {
        return series2_from_json(&v?);
    }
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected [c1, c2], got {t:?}")))?;
    let (a, b) = inner
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("expected two comma-separated channels in {t:?}")))?;
    Series2::new(short_series(a, degree)?, short_series(b, degree)?)
}

pub fn group(arg: &str, degree: u32) -> Result<GroupElement> {
    GroupElement::try_from(series2(arg, degree)?)
}

pub fn lie(arg: &str, degree: u32) -> Result<LieElement> {
    LieElement::try_from(series2(arg, degree)?)
}

pub fn signal(arg: &str) -> Result<Signal> {
    let text = text_of(arg)?;
    let v = parse_value(&text)?;
    let s: Signal = serde_json::from_value(v).map_err(|e| Error::Parse(format!("signal: {e}")))?;
    // revalidate what serde cannot
    Signal::new(s.h(), s.values().to_vec())
}

pub fn h_element(arg: &str) -> Result<HElement> {
    let gens = arg
        .split('*')
        .map(str::trim)
        .filter(|t| !t.is_empty() && *t != "1")
        .map(str::parse::<Generator>)
        .collect::<Result<Vec<_>>>()?;
    Ok(HElement::monomial(Monomial::from_generators(gens), Coeff::from_integer(1.into())))
}

/// `Σ ± [coeff[*]]word`; a bare number is a multiple of the empty word.
fn short_series(text: &str, degree: u32) -> Result<Series> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty series".into()));
    }
    let mut terms: Vec<String> = Vec::new();
    let mut cur = String::new();
    for ch in compact.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with(['*', '/']) {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);

    let mut out = Series::zero(degree);
    for term in &terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, term.strip_prefix('+').unwrap_or(term)),
        };
        let split = body.find(['x', '∅']).unwrap_or(body.len());
        let (num, word) = body.split_at(split);
        let num = num.strip_suffix('*').unwrap_or(num);
        let k = if num.is_empty() { Coeff::from_integer(1.into()) } else { parse_coeff(num)? };
        let w: Word = word.parse()?;
        if w.wdeg() > degree {
            return Err(Error::BeyondTruncation { needed: w.wdeg(), available: degree });
        }
        let k = k * Coeff::from_integer(sign.into());
        out = &out + &Series::monomial(w, k, degree);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_forms() {
        let s = short_series("2*x0x1 - 1/2 + x1 - x1", 4).unwrap();
        assert_eq!(s, Series::from_ints(4, &[("01", 2)]).unwrap().try_add(&Series::constant(Coeff::new((-1).into(), 2.into()), 4)).unwrap());
        assert_eq!(short_series("-3x0", 2).unwrap(), Series::from_ints(2, &[("0", -3)]).unwrap());
        assert_eq!(short_series("1", 2).unwrap(), Series::one(2));
        assert!(short_series("x0x0", 3).is_err());
        assert!(short_series("y", 3).is_err());
        let p = series2("[1, x1]", 5).unwrap();
        assert_eq!(p.c2(), &Series::from_ints(5, &[("1", 1)]).unwrap());
    }

    #[test]
    fn json_operands() {
        let s = series(r#"{"max_degree": 2, "terms": {"1": "3"}}"#, 9).unwrap();
        assert_eq!(s.max_degree(), 2);
        assert!(series("{\"max_degree\": 2,\n \"terms\": }", 9).is_err());
    }

    #[test]
    fn h_operands() {
        let h = h_element("x1:1*:2").unwrap();
        assert_eq!(h.terms().count(), 1);
        assert!(h_element("x0:9").is_err());
    }
}
