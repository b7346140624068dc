//! Pass/fail reports for structural verification of packings and tilings.

use std::fmt;

/// One named check with its outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Witness or context for failures; empty when the check passed.
    pub detail: String,
}

/// Outcome of running a battery of structural checks.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends one check outcome.
    pub fn record(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    /// Whether every check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// The checks that failed.
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            if c.passed {
                writeln!(f, "ok   {}", c.name)?;
            } else if c.detail.is_empty() {
                writeln!(f, "FAIL {}", c.name)?;
            } else {
                writeln!(f, "FAIL {}: {}", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}
