//! Check records, summaries and their JSON / CSV forms.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::catalog::OracleResult;

/// How a measured value is compared with its threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
}

impl Relation {
    /// `NaN` never passes.
    pub fn holds(self, value: f64, threshold: f64) -> bool {
        match self {
            Relation::AtMost => value <= threshold,
            Relation::AtLeast => value >= threshold,
        }
    }
}

/// One measured check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub suite: String,
    pub check: String,
    pub anchor: String,
    pub value: Option<f64>,
    pub relation: Relation,
    pub threshold: f64,
    pub pass: bool,
    pub runtime_ms: f64,
    /// Error message when the check could not be evaluated.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

/// Everything a run produced. Field order is the serialized key order.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub n: usize,
    pub rng_seed: u64,
    /// Unit imaginaries of the slice set, as coordinates in `ℝ^n`.
    pub slices: Vec<Vec<f64>>,
    pub oracles: Vec<OracleResult>,
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn summarize(&mut self) {
        let passed = self.records.iter().filter(|r| r.pass).count();
        self.summary = Summary { total: self.records.len(), passed, failed: self.records.len() - passed };
    }

    pub fn all_passed(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Header `suite,check,anchor,value,threshold,pass,runtime_ms`; numbers in
    /// Rust's locale-independent exponent notation.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("suite,check,anchor,value,threshold,pass,runtime_ms\n");
        for r in &self.records {
            let value = r.value.map_or_else(|| "NaN".to_string(), |v| format!("{v:e}"));
            let _ = writeln!(
                out,
                "{},{},{},{},{:e},{},{:.3}",
                csv_field(&r.suite),
                csv_field(&r.check),
                csv_field(&r.anchor),
                value,
                r.threshold,
                r.pass,
                r.runtime_ms
            );
        }
        out
    }

    pub fn write_json(&self, path: &Path) -> io::Result<()> {
        std::fs::write(path, self.to_json())
    }

    pub fn write_csv(&self, path: &Path) -> io::Result<()> {
        std::fs::write(path, self.to_csv())
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
