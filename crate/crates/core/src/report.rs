use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::linalg::Tolerance;

/// Outcome of one named check: the quantity it targets, the worst measured
/// deviation from that target, and whether the deviation is within tolerance.
///
/// Serializes to the report file schema
/// `{check, target, max_deviation, tolerance, pass, details}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub target: f64,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(default)]
    pub details: Vec<Value>,
}

impl VerificationReport {
    /// `pass` is derived: it holds iff `max_deviation <= tolerance`.
    pub fn new(check: impl Into<String>, target: f64, max_deviation: f64, tol: Tolerance) -> Self {
        Self {
            check: check.into(),
            target,
            max_deviation,
            tolerance: tol.eps(),
            pass: max_deviation <= tol.eps(),
            details: Vec::new(),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<Value>) -> Self {
        self.details.push(detail.into());
        self
    }

    /// Combine sub-checks. The result passes iff every part passes; the
    /// deviation is the worst over all parts.
    pub fn combine(check: impl Into<String>, target: f64, tol: Tolerance, parts: Vec<VerificationReport>) -> Self {
        let max_deviation = parts.iter().map(|p| p.max_deviation).fold(0.0, f64::max);
        let all_pass = parts.iter().all(|p| p.pass);
        let mut report = Self::new(check, target, max_deviation, tol);
        report.pass = all_pass && report.pass;
        report.details = parts
            .into_iter()
            .map(|p| serde_json::to_value(p).expect("reports serialize"))
            .collect();
        report
    }
}
