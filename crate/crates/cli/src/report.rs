//! Scenario reports: the computed class (or sequence) plus named checks.

use std::collections::BTreeMap;
use std::fmt::Write;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use segcalc_core::graded::{CycleClass, Rational};

use crate::classjson::{class_to_json, rational_to_json};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Disagreement with a published value; reported, never fatal.
    Warn,
    Info,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Warn => "warn",
            Status::Info => "info",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    /// Extra lines printed under the check (diffs, notes).
    pub notes: Vec<String>,
}

impl Check {
    pub fn compare(name: impl Into<String>, lhs: &CycleClass, rhs: &CycleClass) -> Self {
        let status = if lhs == rhs { Status::Pass } else { Status::Fail };
        let mut check = Check { name: name.into(), status, lhs: lhs.to_string(), rhs: rhs.to_string(), notes: vec![] };
        if status == Status::Fail {
            check.notes = class_diff(lhs, rhs);
        }
        check
    }

    pub fn boolean(name: impl Into<String>, ok: bool, lhs: impl ToString, rhs: impl ToString) -> Self {
        Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            notes: vec![],
        }
    }

    pub fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn to_json(&self) -> Value {
        json!({ "name": self.name, "status": self.status.as_str(), "lhs": self.lhs, "rhs": self.rhs })
    }
}

/// One line per dimension whose coefficients differ.
pub fn class_diff(got: &CycleClass, want: &CycleClass) -> Vec<String> {
    let top = got.basis().ambient_dim().max(want.basis().ambient_dim());
    (0..=top)
        .rev()
        .filter_map(|d| {
            let (a, b) = (got.coeff_in_dim(d), want.coeff_in_dim(d));
            (a != b).then(|| format!("[P^{d}]: got {a}, expected {b}"))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    pub scenario: String,
    pub class: Option<CycleClass>,
    pub sequence: Option<Vec<BigInt>>,
    /// Secondary classes worth showing (e.g. the opposite twist).
    pub extra: BTreeMap<String, CycleClass>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(scenario: impl Into<String>) -> Self {
        Report { scenario: scenario.into(), ..Default::default() }
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        out.insert("scenario".into(), json!(self.scenario));
        out.insert("class".into(), self.class.as_ref().map_or(Value::Null, class_to_json));
        if let Some(seq) = &self.sequence {
            out.insert("sequence".into(), Value::Array(seq.iter().map(|v| rational_to_json(&Rational::from_integer(v.clone()))).collect()));
        }
        if !self.extra.is_empty() {
            let extra: Map<String, Value> = self.extra.iter().map(|(k, v)| (k.clone(), class_to_json(v))).collect();
            out.insert("extra".into(), Value::Object(extra));
        }
        out.insert("checks".into(), Value::Array(self.checks.iter().map(Check::to_json).collect()));
        Value::Object(out)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "scenario: {}", self.scenario).unwrap();
        if let Some(class) = &self.class {
            writeln!(s, "  class: {class}").unwrap();
        }
        if let Some(seq) = &self.sequence {
            let items: Vec<String> = seq.iter().map(|v| v.to_string()).collect();
            writeln!(s, "  sequence: {}", items.join(", ")).unwrap();
        }
        for (name, class) in &self.extra {
            writeln!(s, "  {name}: {class}").unwrap();
        }
        for check in &self.checks {
            writeln!(s, "  [{}] {}: {} | {}", check.status.as_str(), check.name, check.lhs, check.rhs).unwrap();
            for note in &check.notes {
                writeln!(s, "      {note}").unwrap();
            }
        }
        s
    }
}
