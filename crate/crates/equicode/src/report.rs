//! Pass/fail reports emitted by the verification drivers.

use serde::Serialize;

/// Outcome of one identity check. `lhs`/`rhs` are the two independently
/// computed sides rendered canonically; `witness` carries the first
/// discrepancy when the check fails.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub flavor: String,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization")
    }

    pub fn summary_line(&self) -> String {
        format!(
            "[{}] {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.flavor
        )
    }
}
