//! Report envelope: schema-versioned, deterministic bytes for a fixed
//! (config, seed). Timing is opt-in and excluded from the determinism
//! contract.

use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Undecidable,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub status: CheckStatus,
    pub details: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub tool: ToolInfo,
    pub command: String,
    pub config: Value,
    pub status: CheckStatus,
    pub checks: Vec<CheckEntry>,
    pub witnesses: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn new(command: &str, config: Value) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            tool: ToolInfo {
                name: "zadic",
                version: env!("CARGO_PKG_VERSION"),
            },
            command: command.to_string(),
            config,
            status: CheckStatus::Pass,
            checks: Vec::new(),
            witnesses: json!({}),
            timing_ms: None,
        }
    }

    pub fn push(&mut self, name: &str, ok: bool, details: impl Into<String>) {
        let status = if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        if !ok {
            self.status = CheckStatus::Fail;
        }
        self.checks.push(CheckEntry {
            name: name.to_string(),
            status,
            details: details.into(),
        });
    }

    pub fn push_undecidable(&mut self, name: &str, details: impl Into<String>) {
        if self.status == CheckStatus::Pass {
            self.status = CheckStatus::Undecidable;
        }
        self.checks.push(CheckEntry {
            name: name.to_string(),
            status: CheckStatus::Undecidable,
            details: details.into(),
        });
    }

    /// Exit code contract: 0 pass, 1 check failure, 3 undecidable.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            CheckStatus::Pass => 0,
            CheckStatus::Fail => 1,
            CheckStatus::Undecidable => 3,
        }
    }

    pub fn to_pretty_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("serializable report");
        out.push('\n');
        out
    }
}

/// The published JSON schema for reports; printed by `--schema`.
pub fn report_schema() -> String {
    let schema = json!({
        "$schema": "http://json-schema.org/draft-07/schema#",
        "title": "zadic report",
        "type": "object",
        "required": ["schema_version", "tool", "command", "config", "status", "checks", "witnesses"],
        "properties": {
            "schema_version": {"const": SCHEMA_VERSION},
            "tool": {
                "type": "object",
                "required": ["name", "version"],
                "properties": {
                    "name": {"type": "string"},
                    "version": {"type": "string"}
                }
            },
            "command": {"type": "string"},
            "config": {"type": "object"},
            "status": {"enum": ["pass", "fail", "undecidable"]},
            "checks": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["name", "status", "details"],
                    "properties": {
                        "name": {"type": "string"},
                        "status": {"enum": ["pass", "fail", "undecidable"]},
                        "details": {"type": "string"}
                    }
                }
            },
            "witnesses": {"type": "object"},
            "timing_ms": {"type": "integer"}
        }
    });
    let mut out = serde_json::to_string_pretty(&schema).expect("static schema");
    out.push('\n');
    out
}

/// Minimal structural validation against the published schema, used by the
/// test suite (no external schema engine).
pub fn validate_report_json(value: &Value) -> Result<(), String> {
    let obj = value.as_object().ok_or("report is not an object")?;
    for key in [
        "schema_version",
        "tool",
        "command",
        "config",
        "status",
        "checks",
        "witnesses",
    ] {
        if !obj.contains_key(key) {
            return Err(format!("missing required key {key}"));
        }
    }
    if obj["schema_version"] != json!(SCHEMA_VERSION) {
        return Err("schema_version mismatch".to_string());
    }
    let status = obj["status"].as_str().ok_or("status is not a string")?;
    if !["pass", "fail", "undecidable"].contains(&status) {
        return Err(format!("bad status {status}"));
    }
    let checks = obj["checks"].as_array().ok_or("checks is not an array")?;
    for c in checks {
        let c = c.as_object().ok_or("check entry is not an object")?;
        for key in ["name", "status", "details"] {
            if !c.contains_key(key) {
                return Err(format!("check entry missing {key}"));
            }
        }
    }
    Ok(())
}
