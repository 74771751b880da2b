//! Machine-readable check reports shared by the CLI.
//!
//! A report is a flat serde structure with a fixed field order, so an
//! exact-backend run serializes byte-identically across invocations given
//! the same inputs and version. Wall time is recorded only on request for
//! that reason.

use serde::Serialize;
use sha2::{Digest, Sha256};

/// Outcome of a single named check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The check ran to a stated bound without deciding; counts as a pass
    /// for the exit code.
    Bounded,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub details: String,
}

/// Versioned result envelope printed by every subcommand.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    /// Hex digest over the resolved input payloads.
    pub inputs: String,
    pub backend: String,
    pub checks: Vec<Check>,
    /// Seconds; populated only when timing was requested.
    pub wall_time: Option<f64>,
    /// Structured subcommand output, when the subcommand has any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub payload: Option<serde_json::Value>,
}

impl Report {
    pub fn new(
        command: impl Into<String>,
        inputs: impl Into<String>,
        backend: impl Into<String>,
    ) -> Report {
        Report {
            schema: 1,
            command: command.into(),
            inputs: inputs.into(),
            backend: backend.into(),
            checks: Vec::new(),
            wall_time: None,
            payload: None,
        }
    }

    /// Records a pass/fail check.
    pub fn check(&mut self, name: &str, ok: bool, details: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            status: if ok {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            details: details.into(),
        });
    }

    /// Records a check that hit its exploration bound without deciding.
    pub fn bounded(&mut self, name: &str, details: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            status: CheckStatus::Bounded,
            details: details.into(),
        });
    }

    /// True when no check failed; bounded results count as passes.
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    /// 0 when all checks pass, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Hex SHA-256 over the concatenation of the given parts, each prefixed by
/// its length so distinct splittings cannot collide.
pub fn digest_hex(parts: &[&[u8]]) -> String {
    let mut hasher = Sha256::new();
    for part in parts {
        hasher.update((part.len() as u64).to_le_bytes());
        hasher.update(part);
    }
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for byte in digest {
        out.push_str(&format!("{byte:02x}"));
    }
    out
}
