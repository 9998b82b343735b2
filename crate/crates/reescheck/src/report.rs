//! Machine-readable run reports.
//!
//! Every command assembles one JSON document: a config echo, the tool
//! version, a timestamp, and a list of per-check records. Each record
//! names its check, carries a digest of the inputs, an outcome, the
//! witness data needed to re-verify the claim without re-running, the
//! resample log, and the wall time. Keys are emitted in sorted order,
//! so two runs of one config differ only in the timestamp and the
//! wall-time fields.

use crate::forms::BinaryForm;
use crate::scalars::FieldSpec;
use crate::{Error, Result};
use serde_json::{json, Map, Value};
use std::time::{SystemTime, UNIX_EPOCH};

/// Result of one named check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// The computed value matched the expectation.
    Pass,
    /// The computed value contradicted the expectation.
    Fail,
    /// Exploratory result, reported without an expectation.
    Recorded,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Recorded => "recorded",
        }
    }

    pub fn from_passed(passed: bool) -> Outcome {
        if passed {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

/// One per-check record of a report.
#[derive(Clone, Debug)]
pub struct CheckRecord {
    pub name: String,
    pub inputs_digest: String,
    pub outcome: Outcome,
    pub details: Value,
    pub resamples: Vec<String>,
    pub wall_ms: u128,
}

impl CheckRecord {
    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "inputs_digest": self.inputs_digest,
            "outcome": self.outcome.as_str(),
            "details": self.details,
            "resamples": self.resamples,
            "wall_ms": self.wall_ms as u64,
        })
    }
}

/// A full run report.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub timestamp_unix_secs: u64,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn new(command: &str, config: Value) -> Report {
        let timestamp_unix_secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Report {
            command: command.to_string(),
            config,
            timestamp_unix_secs,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: CheckRecord) {
        self.checks.push(check);
    }

    /// True when no check failed (recorded outcomes do not count).
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.outcome != Outcome::Fail)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "tool": "reescheck",
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "timestamp_unix_secs": self.timestamp_unix_secs,
            "config": self.config,
            "checks": self.checks.iter().map(CheckRecord::to_json).collect::<Vec<_>>(),
            "all_passed": self.all_passed(),
        })
    }

    /// The serialized document, pretty-printed with a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        s.push('\n');
        s
    }
}

/// FNV-1a digest of the canonical input description of a check.
pub fn fnv1a_hex(data: &str) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in data.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

/// JSON encoding of one form: its degree plus the coefficient strings
/// in ascending x-power order.
pub fn form_to_json(f: &BinaryForm) -> Value {
    json!({
        "degree": f.degree(),
        "coeffs": f.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

pub fn forms_to_json(forms: &[BinaryForm]) -> Value {
    Value::Array(forms.iter().map(form_to_json).collect())
}

/// Decode one form written by [`form_to_json`].
pub fn form_from_json(field: FieldSpec, value: &Value) -> Result<BinaryForm> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::InvalidInput("a form must be a JSON object".into()))?;
    let coeffs = obj
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::InvalidInput("a form needs a \"coeffs\" array".into()))?;
    let mut parsed = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        let s = c
            .as_str()
            .ok_or_else(|| Error::InvalidInput("coefficients must be strings".into()))?;
        parsed.push(field.parse(s)?);
    }
    let form = BinaryForm::new(field, parsed)?;
    if let Some(d) = obj.get("degree") {
        if d.as_u64() != Some(form.degree() as u64) {
            return Err(Error::InvalidInput(format!(
                "declared degree {d} does not match {} coefficients",
                form.coeffs().len()
            )));
        }
    }
    Ok(form)
}

pub fn forms_from_json(field: FieldSpec, value: &Value) -> Result<Vec<BinaryForm>> {
    value
        .as_array()
        .ok_or_else(|| Error::InvalidInput("expected a JSON array of forms".into()))?
        .iter()
        .map(|v| form_from_json(field, v))
        .collect()
}

/// Fetch a string field from a JSON object.
pub fn str_field<'a>(value: &'a Value, key: &str) -> Result<&'a str> {
    value
        .get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| Error::InvalidInput(format!("missing string field {key:?}")))
}

/// Fetch an unsigned integer field from a JSON object.
pub fn u64_field(value: &Value, key: &str) -> Result<u64> {
    value
        .get(key)
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::InvalidInput(format!("missing integer field {key:?}")))
}

/// Sorted-key JSON object from label/value pairs.
pub fn object(pairs: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in pairs {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}
