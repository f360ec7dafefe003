use std::fmt;

use serde::{Deserialize, Serialize};

use crate::Witness;

pub const REPORT_SCHEMA: &str = "traceforge-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Every trial within tolerance.
    Pass,
    /// A violation was found and re-verified.
    Fail,
    /// A refutation search exhausted its budget, or no trial could be evaluated.
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    #[default]
    Nats,
    Bits,
}

/// Outcome for one dimension configuration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfigSummary {
    pub dims: Vec<usize>,
    pub seed: u64,
    pub trials: usize,
    pub worst_slack: Option<f64>,
    pub discarded: usize,
    /// Trials that needed a regularized channel to meet an invertibility precondition.
    pub resampled: usize,
    /// Trials flagged by the check itself (meaning given in the report details).
    pub marked: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub status: Status,
    pub expected: Status,
    /// Smallest normalized slack over all evaluated trials; negative means violated.
    pub worst_slack: Option<f64>,
    pub tol: f64,
    pub witness: Option<Witness>,
    pub trials_run: usize,
    pub discarded: usize,
    pub resampled: usize,
    pub seed: u64,
    pub units: Units,
    pub configs: Vec<ConfigSummary>,
    pub details: Vec<String>,
    pub wall_time: f64,
}

impl CheckReport {
    pub fn meets_expectation(&self) -> bool {
        self.status == self.expected
    }

    /// Rescales entropy-valued witness entries to bits.
    pub fn into_bits(mut self) -> Self {
        if self.units == Units::Nats {
            if let Some(w) = &mut self.witness {
                w.to_bits();
            }
            self.units = Units::Bits;
        }
        self
    }
}

/// Top-level report document.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportDocument {
    pub schema: &'static str,
    pub reports: Vec<CheckReport>,
}

impl ReportDocument {
    pub fn new(reports: Vec<CheckReport>) -> Self {
        Self { schema: REPORT_SCHEMA, reports }
    }

    pub fn all_as_expected(&self) -> bool {
        self.reports.iter().all(CheckReport::meets_expectation)
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_serializes_lowercase() {
        assert_eq!(serde_json::to_string(&Status::Inconclusive).unwrap(), "\"inconclusive\"");
        let back: Status = serde_json::from_str("\"fail\"").unwrap();
        assert_eq!(back, Status::Fail);
    }
}
