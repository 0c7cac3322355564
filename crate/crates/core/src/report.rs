//! Structured pass/fail evidence with counterexample locations.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
    Info,
}

/// One observation, tied to a vertex/edge/cell identifier or a pipeline
/// stage name. `counterexample` holds machine-readable evidence such as a
/// pair of edge-ends with equal images.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Finding {
    pub severity: Severity,
    pub location: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct VerificationReport {
    pub findings: Vec<Finding>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// A report passes iff it contains no error-severity finding.
    pub fn pass(&self) -> bool {
        self.findings.iter().all(|f| f.severity != Severity::Error)
    }

    pub fn error(&mut self, location: impl Into<String>, message: impl Into<String>) {
        self.push(Severity::Error, location, message, None);
    }

    pub fn error_with(
        &mut self,
        location: impl Into<String>,
        message: impl Into<String>,
        counterexample: Value,
    ) {
        self.push(Severity::Error, location, message, Some(counterexample));
    }

    pub fn info(&mut self, location: impl Into<String>, message: impl Into<String>) {
        self.push(Severity::Info, location, message, None);
    }

    pub fn info_with(
        &mut self,
        location: impl Into<String>,
        message: impl Into<String>,
        counterexample: Value,
    ) {
        self.push(Severity::Info, location, message, Some(counterexample));
    }

    pub fn warning(&mut self, location: impl Into<String>, message: impl Into<String>) {
        self.push(Severity::Warning, location, message, None);
    }

    fn push(
        &mut self,
        severity: Severity,
        location: impl Into<String>,
        message: impl Into<String>,
        counterexample: Option<Value>,
    ) {
        self.findings.push(Finding {
            severity,
            location: location.into(),
            message: message.into(),
            counterexample,
        });
    }

    pub fn errors(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| f.severity == Severity::Error)
    }

    /// Appends every finding of `other`, prefixing locations with `prefix/`.
    pub fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        for mut f in other.findings {
            f.location = format!("{prefix}/{}", f.location);
            self.findings.push(f);
        }
    }

    /// Serialization view with the derived `pass` flag included.
    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "pass": self.pass(),
            "findings": self.findings,
        })
    }
}
