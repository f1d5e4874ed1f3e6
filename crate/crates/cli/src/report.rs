use std::fmt;

use serde::Serialize;
use serde_json::Value as Json;

/// One pass/fail line of a verification run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub measured: f64,
    pub threshold: f64,
    /// Secondary measurements, human readable.
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    /// Passes when `measured ≤ threshold`.
    pub fn at_most(name: impl Into<String>, measured: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            pass: measured <= threshold,
            measured,
            threshold,
            detail: String::new(),
        }
    }

    /// Passes when `measured ≥ threshold`.
    pub fn at_least(name: impl Into<String>, measured: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            pass: measured >= threshold,
            measured,
            threshold,
            detail: String::new(),
        }
    }

    /// Passes when `measured > threshold`.
    pub fn above(name: impl Into<String>, measured: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            pass: measured > threshold,
            measured,
            threshold,
            detail: String::new(),
        }
    }

    pub fn failed(name: impl Into<String>, threshold: f64, why: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            pass: false,
            measured: f64::NAN,
            threshold,
            detail: why.into(),
        }
    }

    /// Folds in a further condition that must also hold.
    pub fn and(mut self, ok: bool, note: impl fmt::Display) -> Self {
        self.pass &= ok;
        self.note(format!("{note}{}", if ok { "" } else { " FAILED" }));
        self
    }

    pub fn note(&mut self, note: impl fmt::Display) {
        if !self.detail.is_empty() {
            self.detail.push_str("; ");
        }
        self.detail.push_str(&note.to_string());
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}: measured {:.6e}, threshold {:.6e}",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.measured,
            self.threshold
        )?;
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub config: Json,
    pub checks: Vec<Check>,
    pub witnesses: Vec<Json>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        writeln!(f, "{passed}/{} checks passed", self.checks.len())
    }
}
