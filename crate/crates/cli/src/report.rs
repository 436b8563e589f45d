use std::collections::BTreeMap;
use std::fmt::Write as _;

use minusord::field::Field;
use minusord::io::write_matrix;
use minusord::Matrix;
use serde::{Deserialize, Serialize};

/// Outcome of one invocation, printed as text or JSON.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub verdict: String,
    pub exit_status: i32,
    /// Field header of the inputs (`Q`, `GF p`, `C`).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub field: Option<String>,
    /// Relative tolerance, reported on the floating-point path only.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tolerance: Option<f64>,
    /// Scalar facts, in insertion order.
    #[serde(default)]
    pub facts: Vec<(String, String)>,
    /// Matrices in the plain-text matrix format.
    #[serde(default)]
    pub witnesses: BTreeMap<String, String>,
    /// Free-form lines, e.g. one per oracle report.
    #[serde(default)]
    pub lines: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub data: Option<serde_json::Value>,
}

impl RunReport {
    pub fn new(command: String) -> Self {
        Self { command, ..Self::default() }
    }

    pub fn set_field<F: Field>(&mut self, field: &F) {
        self.field = Some(field.kind().to_string());
        self.tolerance = field.tolerance();
    }

    pub fn fact(&mut self, key: &str, value: impl ToString) {
        self.facts.push((key.to_string(), value.to_string()));
    }

    pub fn witness<F: Field>(&mut self, key: &str, m: &Matrix<F>) {
        self.witnesses.insert(key.to_string(), write_matrix(m));
    }

    pub fn finish(&mut self, verdict: impl ToString, exit_status: i32) -> i32 {
        self.verdict = verdict.to_string();
        self.exit_status = exit_status;
        exit_status
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "verdict: {}", self.verdict);
        if let Some(field) = &self.field {
            let _ = writeln!(out, "field: {field}");
        }
        if let Some(tol) = self.tolerance {
            let _ = writeln!(out, "tolerance: {tol:e}");
        }
        for (k, v) in &self.facts {
            let _ = writeln!(out, "{k}: {v}");
        }
        for line in &self.lines {
            let _ = writeln!(out, "{line}");
        }
        for (name, m) in &self.witnesses {
            let _ = write!(out, "{name}:\n{m}");
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable") + "\n"
    }
}
