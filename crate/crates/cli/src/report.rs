//! The JSON envelope shared by every command.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub passed: bool,
    pub checks: usize,
    pub failures: usize,
}

impl Summary {
    pub fn from_checks(checks: usize, failures: usize) -> Self {
        Summary { passed: failures == 0, checks, failures }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub version: String,
    pub parameters: BTreeMap<String, Value>,
    /// Formula labels exercised by the command.
    pub anchors: Vec<String>,
    pub seed: Option<u64>,
    pub results: Value,
    pub summary: Summary,
}

impl RunReport {
    pub fn new(command: &str, parameters: BTreeMap<String, Value>, anchors: &[&str], results: Value, summary: Summary) -> Self {
        RunReport {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            parameters,
            anchors: anchors.iter().map(|s| s.to_string()).collect(),
            seed: None,
            results,
            summary,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

/// Rows for `--format tsv`.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn render(&self) -> String {
        let mut out = self.header.join("\t");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.join("\t"));
            out.push('\n');
        }
        out
    }
}

pub struct Output {
    pub report: RunReport,
    pub table: Option<Table>,
}

impl Output {
    pub fn json(report: RunReport) -> Self {
        Output { report, table: None }
    }
}
