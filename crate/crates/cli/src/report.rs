use std::fmt;

use serde::Serialize;

/// One named check with what was expected and what was found.
#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    pub got: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, got: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            expected: None,
            got: got.into(),
        }
    }

    pub fn expecting(mut self, expected: impl Into<String>) -> Self {
        self.expected = Some(expected.into());
        self
    }
}

/// Outcome of a `verify` run. The text and JSON forms carry the same fields.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
    pub elapsed_ms: u128,
}

impl RunReport {
    pub fn new(command: String, checks: Vec<Check>, elapsed_ms: u128) -> Self {
        let passed = checks.iter().filter(|c| c.passed).count();
        let failed = checks.len() - passed;
        RunReport {
            command,
            checks,
            passed,
            failed,
            elapsed_ms,
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "command: {}", self.command)?;
        for c in &self.checks {
            writeln!(
                f,
                "{} {}: {}",
                if c.passed { "ok  " } else { "FAIL" },
                c.name,
                c.got
            )?;
            if let Some(e) = &c.expected {
                writeln!(f, "     expected: {e}")?;
            }
        }
        writeln!(f, "passed: {}", self.passed)?;
        writeln!(f, "failed: {}", self.failed)?;
        write!(f, "elapsed_ms: {}", self.elapsed_ms)
    }
}
