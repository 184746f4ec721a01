//! Pass/fail reports shared by every validator in the crate.

use std::fmt;

use serde::Serialize;

/// One failed identity: where it failed and what was left over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub location: String,
    pub residual: String,
}

/// Outcome of a validation pass. Failures are data, not errors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub check: String,
    pub checked: usize,
    pub failures: Vec<Failure>,
}

impl ValidationReport {
    pub fn new(check: impl Into<String>) -> Self {
        ValidationReport { check: check.into(), checked: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn record(&mut self, ok: bool, location: impl FnOnce() -> String, residual: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(Failure { location: location(), residual: residual() });
        }
    }

    pub fn fail(&mut self, location: impl Into<String>, residual: impl Into<String>) {
        self.checked += 1;
        self.failures.push(Failure { location: location.into(), residual: residual.into() });
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "pass" } else { "FAIL" };
        write!(f, "{}: {} ({} checked, {} failed)", self.check, verdict, self.checked, self.failures.len())?;
        for fl in &self.failures {
            write!(f, "\n  at {}: residual {}", fl.location, fl.residual)?;
        }
        Ok(())
    }
}

/// Machine-readable outcome of one window check.
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub check: String,
    pub bound: usize,
    /// Window on which the identity was asserted.
    pub window: usize,
    /// True when the window was exhausted and nothing could be evaluated.
    pub vacuous: bool,
    pub report: ValidationReport,
}

impl Verdict {
    pub fn new(check: impl Into<String>, bound: usize, window: usize, report: ValidationReport) -> Self {
        Verdict { check: check.into(), bound, window, vacuous: report.checked == 0, report }
    }

    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}
