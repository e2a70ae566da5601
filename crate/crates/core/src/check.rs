//! Structured outcomes of identity checks.
//!
//! A checker returns `Ok(None)` when the identity holds and `Ok(Some(w))`
//! with a [`Witness`] when it does not; `Err` is reserved for inputs the
//! operations reject.

use serde::Serialize;
use serde_json::Value;

use crate::error::Result;
use crate::json::{series2_to_json, series_to_json};
use crate::series::{Coeff, Series};
use crate::series2::{GroupElement, LieElement, Series2};

/// Everything needed to replay a failed identity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub check: String,
    pub inputs: Vec<Value>,
    pub expected: Value,
    pub actual: Value,
    pub first_difference: Option<String>,
}

pub type CheckResult = Result<Option<Witness>>;

/// Values that checkers can compare and report.
pub trait Checkable: PartialEq {
    fn to_json(&self) -> Value;
    /// Human-readable location of the first difference, if any.
    fn first_difference_label(&self, other: &Self) -> Option<String>;
}

impl Checkable for Coeff {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
    fn first_difference_label(&self, _: &Self) -> Option<String> {
        None
    }
}

impl Checkable for Series {
    fn to_json(&self) -> Value {
        series_to_json(self)
    }
    fn first_difference_label(&self, other: &Self) -> Option<String> {
        self.first_difference(other).map(|w| w.pretty())
    }
}

impl Checkable for Series2 {
    fn to_json(&self) -> Value {
        series2_to_json(self)
    }
    fn first_difference_label(&self, other: &Self) -> Option<String> {
        self.first_difference(other).map(|(ch, w)| format!("{} e{}", w.pretty(), ch.index()))
    }
}

impl Checkable for GroupElement {
    fn to_json(&self) -> Value {
        self.as_series2().to_json()
    }
    fn first_difference_label(&self, other: &Self) -> Option<String> {
        self.as_series2().first_difference_label(other.as_series2())
    }
}

impl Checkable for LieElement {
    fn to_json(&self) -> Value {
        self.as_series2().to_json()
    }
    fn first_difference_label(&self, other: &Self) -> Option<String> {
        self.as_series2().first_difference_label(other.as_series2())
    }
}

/// `None` when `expected == actual`, otherwise a witness naming `check`.
pub fn compare<T: Checkable>(check: &str, inputs: &[&T], expected: &T, actual: &T) -> Option<Witness> {
    if expected == actual {
        return None;
    }
    compare_json(check, inputs.iter().map(|x| x.to_json()).collect(), expected, actual)
}

/// As [`compare`], with inputs already serialised.
pub fn compare_json<T: Checkable>(check: &str, inputs: Vec<Value>, expected: &T, actual: &T) -> Option<Witness> {
    if expected == actual {
        return None;
    }
    Some(Witness {
        check: check.to_string(),
        inputs,
        expected: expected.to_json(),
        actual: actual.to_json(),
        first_difference: expected.first_difference_label(actual),
    })
}

/// Runs checks in order and stops at the first failure.
pub fn first_failure<I>(checks: I) -> CheckResult
where
    I: IntoIterator<Item = CheckResult>,
{
    for c in checks {
        if let Some(w) = c? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}
