//! Check reports and their JSON form.

use std::time::Duration;

use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub details: Value,
    pub witness: Option<Value>,
}

impl CheckResult {
    pub fn pass(name: &str, details: Value) -> Self {
        CheckResult {
            name: name.into(),
            status: Status::Pass,
            details,
            witness: None,
        }
    }

    pub fn fail(name: &str, details: Value, witness: Value) -> Self {
        CheckResult {
            name: name.into(),
            status: Status::Fail,
            details,
            witness: Some(witness),
        }
    }

    pub fn error(name: &str, message: impl std::fmt::Display) -> Self {
        CheckResult {
            name: name.into(),
            status: Status::Error,
            details: json!({"message": message.to_string()}),
            witness: None,
        }
    }

    /// Pass when `witness` is `None`.
    pub fn from_witness(name: &str, details: Value, witness: Option<Value>) -> Self {
        match witness {
            None => CheckResult::pass(name, details),
            Some(w) => CheckResult::fail(name, details, w),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "name": self.name,
            "status": self.status.as_str(),
            "details": self.details,
        });
        if let Some(w) = &self.witness {
            v["witness"] = w.clone();
        }
        v
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub checks: Vec<CheckResult>,
    pub elapsed: Duration,
}

impl Report {
    pub fn status(&self) -> Status {
        if self.checks.iter().any(|c| c.status == Status::Error) {
            Status::Error
        } else if self.checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else {
            Status::Pass
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status() {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "status": self.status().as_str(),
            "checks": self.checks.iter().map(CheckResult::to_json).collect::<Vec<_>>(),
            "timing": {"elapsed_ms": self.elapsed.as_millis() as u64},
        })
    }
}
