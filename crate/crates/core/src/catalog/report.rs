//! The JSON report emitted by the checks.

use serde::Serialize;

use crate::expr::{Verdict, VerdictKind, Witness};

/// Version of the JSON layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Outcome of one check against its expectation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// The observation agrees with the expectation.
    Pass,
    /// The observation contradicts the expectation.
    Fail,
    /// The test could not decide.
    Inconclusive,
    /// Observation without an expectation.
    Info,
    /// Not run because a prerequisite failed or does not apply.
    Skipped,
}

/// One row of the report.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    /// `Zero`, `ZeroNumerically`, `NonZero`, `Inconclusive`, `Skipped` or a value label.
    pub verdict: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub observed: Option<String>,
    /// Largest residual, as a decimal string.
    pub residual: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub trials: usize,
    /// Significant digits of the numeric evaluation; `null` for exact arithmetic.
    pub precision: Option<usize>,
    /// Wall-clock time; `null` unless timings were requested.
    pub millis: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, verdict: impl Into<String>, status: Status) -> Self {
        CheckRecord {
            name: name.into(),
            verdict: verdict.into(),
            status,
            expected: None,
            observed: None,
            residual: "0".into(),
            witness: None,
            trials: 0,
            precision: None,
            millis: None,
            detail: None,
        }
    }

    pub fn skipped(name: impl Into<String>, why: impl Into<String>) -> Self {
        CheckRecord { detail: Some(why.into()), ..CheckRecord::new(name, "Skipped", Status::Skipped) }
    }

    /// A record carrying the metadata of an identity-test verdict.
    pub fn from_verdict(name: impl Into<String>, v: &Verdict, status: Status) -> Self {
        let mut r = CheckRecord::new(name, v.label(), status);
        r.residual = format_residual(v.residual);
        r.witness = v.witness().cloned();
        r.trials = v.trials;
        r.precision = v.digits;
        if let VerdictKind::Inconclusive(why) = &v.kind {
            r.detail = Some(why.clone());
        }
        r
    }

    pub fn with_expected(mut self, e: impl Into<String>) -> Self {
        self.expected = Some(e.into());
        self
    }

    pub fn with_observed(mut self, o: impl Into<String>) -> Self {
        self.observed = Some(o.into());
        self
    }

    pub fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }
}

/// Residuals are written as decimal strings so no precision is lost to JSON floats.
pub fn format_residual(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if v.is_infinite() {
        "inf".into()
    } else {
        format!("{v:.3e}")
    }
}

/// What was checked and with which settings.
#[derive(Clone, Debug, Serialize)]
pub struct InputEcho {
    pub name: Option<String>,
    pub order: usize,
    /// The right-hand side after auxiliary substitution.
    pub f: String,
    pub seed: u64,
    pub trials: usize,
    pub precision: usize,
    pub tol: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub version: String,
    pub input: InputEcho,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn new(input: InputEcho, checks: Vec<CheckRecord>) -> Self {
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Inconclusive => summary.inconclusive += 1,
                Status::Info | Status::Skipped => {}
            }
        }
        Report { schema: SCHEMA_VERSION, version: env!("CARGO_PKG_VERSION").to_string(), input, checks, summary }
    }

    /// No failure and nothing undecided.
    pub fn passed(&self) -> bool {
        self.summary.fail == 0 && self.summary.inconclusive == 0
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
