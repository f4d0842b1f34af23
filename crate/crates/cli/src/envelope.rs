//! Result envelopes: a payload plus everything needed to reproduce and
//! validate it.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::config::RunConfig;

pub const ENVELOPE_SCHEMA: &str = "rigidity-lab/envelope/v1";
pub const TOOL: &str = "rigidity-lab";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// A comparison against a known value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub actual: Value,
    pub passed: bool,
}

impl Check {
    pub fn new(name: &str, expected: impl Serialize, actual: impl Serialize) -> Self {
        let expected = serde_json::to_value(expected).expect("serializable");
        let actual = serde_json::to_value(actual).expect("serializable");
        Check { name: name.to_string(), passed: expected == actual, expected, actual }
    }

    /// A check whose pass condition is not plain equality.
    pub fn with(name: &str, expected: impl Serialize, actual: impl Serialize, passed: bool) -> Self {
        Check {
            name: name.to_string(),
            expected: serde_json::to_value(expected).expect("serializable"),
            actual: serde_json::to_value(actual).expect("serializable"),
            passed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    /// A resource limit was reached; the payload is partial.
    Overflow,
    /// A known-value check failed.
    Mismatch,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Overflow => 3,
            Status::Mismatch => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub schema: String,
    pub tool: String,
    pub version: String,
    /// Arguments as invoked, without the program name.
    pub command: Vec<String>,
    pub config: RunConfig,
    pub timestamp: String,
    pub status: Status,
    pub payload_schema: String,
    pub payload: Value,
    pub checks: Vec<Check>,
    /// `sha256:<hex>` of the canonical payload text.
    pub checksum: String,
}

/// Compact JSON with object keys sorted. `serde_json::Value` keeps objects
/// in a `BTreeMap`, so serializing a `Value` is already canonical.
pub fn canonical_text(v: &Value) -> String {
    serde_json::to_string(v).expect("values serialize")
}

pub fn checksum(payload: &Value) -> String {
    let digest = Sha256::digest(canonical_text(payload).as_bytes());
    format!("sha256:{digest:x}")
}

impl Envelope {
    pub fn new(
        command: Vec<String>,
        config: RunConfig,
        payload_schema: &str,
        payload: Value,
        checks: Vec<Check>,
        overflow: bool,
    ) -> Self {
        let status = if overflow {
            Status::Overflow
        } else if checks.iter().all(|c| c.passed) {
            Status::Ok
        } else {
            Status::Mismatch
        };
        Envelope {
            schema: ENVELOPE_SCHEMA.to_string(),
            tool: TOOL.to_string(),
            version: VERSION.to_string(),
            command,
            config,
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            status,
            payload_schema: payload_schema.to_string(),
            checksum: checksum(&payload),
            payload,
            checks,
        }
    }

    pub fn checksum_valid(&self) -> bool {
        checksum(&self.payload) == self.checksum
    }

    /// Hex digest without the algorithm prefix.
    pub fn digest(&self) -> &str {
        self.checksum.strip_prefix("sha256:").unwrap_or(&self.checksum)
    }

    pub fn to_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("envelopes serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn checksum_ignores_key_order() {
        let a: Value = serde_json::from_str(r#"{"b": 1, "a": [1, 2]}"#).unwrap();
        let b = json!({"a": [1, 2], "b": 1});
        assert_eq!(checksum(&a), checksum(&b));
        assert_ne!(checksum(&a), checksum(&json!({"a": [2, 1], "b": 1})));
    }

    #[test]
    fn status_follows_checks() {
        let ok = Envelope::new(vec![], RunConfig::default(), "x", json!(1), vec![Check::new("c", 1, 1)], false);
        assert_eq!(ok.status, Status::Ok);
        assert!(ok.checksum_valid());
        let bad = Envelope::new(vec![], RunConfig::default(), "x", json!(1), vec![Check::new("c", 1, 2)], false);
        assert_eq!(bad.status.exit_code(), 4);
        let over = Envelope::new(vec![], RunConfig::default(), "x", json!(1), vec![Check::new("c", 1, 2)], true);
        assert_eq!(over.status.exit_code(), 3);
    }
}
