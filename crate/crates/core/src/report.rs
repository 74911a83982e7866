//! Machine-readable run reports.
//!
//! Field order is fixed by the struct definitions, so serialisation is
//! stable; only `wall_time_ms` varies between identical runs.

use crate::oracle::{Assignment, Grid, Verdict};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::path::Path;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    Counterexample,
    CheckFailed,
    Unknown,
    Error,
}

impl Status {
    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Counterexample | Status::CheckFailed | Status::Unknown => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(path: &Path, bytes: &[u8]) -> InputDigest {
        InputDigest {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct NamedTerm {
    pub name: String,
    #[serde(rename = "type")]
    pub ty: String,
    pub term: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ValueBinding {
    pub name: String,
    #[serde(rename = "type")]
    pub ty: String,
    pub value: String,
}

pub fn bindings(a: &Assignment) -> Vec<ValueBinding> {
    a.0.iter()
        .map(|b| ValueBinding {
            name: b.name.clone(),
            ty: b.ty.to_string(),
            value: b.value.to_term().to_string(),
        })
        .collect()
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Item {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub terms: Vec<NamedTerm>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<ValueBinding>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
    /// For corpus entries: whether the status matched the file's expectation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub as_expected: Option<bool>,
}

impl Item {
    pub fn new(name: impl Into<String>, status: Status) -> Item {
        Item {
            name: name.into(),
            status,
            output: None,
            verdict: None,
            terms: Vec::new(),
            counterexample: None,
            diagnostic: None,
            as_expected: None,
        }
    }

    pub fn error(name: impl Into<String>, status: Status, diagnostic: impl Into<String>) -> Item {
        Item {
            diagnostic: Some(diagnostic.into()),
            ..Item::new(name, status)
        }
    }

    pub fn with_verdict(mut self, v: &Verdict) -> Item {
        self.verdict = Some(v.label().to_string());
        match v {
            Verdict::GridValid => {}
            Verdict::CounterexampleFound(a) => {
                self.status = Status::Counterexample;
                self.counterexample = Some(bindings(a));
            }
            Verdict::Unknown(r) => {
                self.status = Status::Unknown;
                self.diagnostic = Some(r.clone());
            }
        }
        self
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GridParams {
    pub nat_bound: u64,
    pub len_bound: usize,
    pub depth_bound: usize,
}

impl From<Grid> for GridParams {
    fn from(g: Grid) -> Self {
        GridParams {
            nat_bound: g.nat_bound,
            len_bound: g.seq_len_bound,
            depth_bound: g.depth_bound,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Report {
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub status: Status,
    pub items: Vec<Item>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridParams>,
    pub wall_time_ms: f64,
}

impl Report {
    /// The overall status: the worst item status, or as-expected for corpora.
    pub fn summarize(items: &[Item]) -> Status {
        if items.iter().any(|i| i.as_expected.is_some()) {
            return if items.iter().all(|i| i.as_expected == Some(true)) {
                Status::Ok
            } else {
                Status::CheckFailed
            };
        }
        items
            .iter()
            .map(|i| i.status.clone())
            .max_by_key(Status::exit_code)
            .unwrap_or(Status::Ok)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialise") + "\n"
    }

    /// JSON with the wall-time field zeroed, for determinism comparisons.
    pub fn to_json_without_time(&self) -> String {
        Report {
            wall_time_ms: 0.0,
            ..self.clone()
        }
        .to_json()
    }
}
