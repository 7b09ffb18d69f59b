//! JSON front end for `atiyah-core`: obligation documents in, check reports out.
//!
//! A document names a payload (algebra, algebroid with sections, connection,
//! model algebroid, morphism) and optionally the checks to run. Every command
//! produces a [`report::Report`]; the process exit code is 0 when every check
//! passes, 1 when some check fails (with a witness), and 2 on input errors.

pub mod commands;
pub mod corpus;
pub mod document;
pub mod format;
pub mod report;

use serde_json::{json, Value};

pub use commands::Command;
pub use document::{Document, DocumentError};
pub use report::{Report, Status};

/// Flag overrides applied on top of the document options.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub degree: Option<u32>,
}

/// Result of one invocation: the exit code and the JSON printed on stdout.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    pub output: Value,
}

fn input_error(cmd: Command, kind: &str, path: Option<&str>, message: String) -> Outcome {
    let mut error = json!({"kind": kind, "message": message});
    if let Some(p) = path {
        error["path"] = json!(p);
    }
    Outcome {
        exit_code: 2,
        output: json!({"command": cmd.name(), "status": "error", "checks": [], "error": error}),
    }
}

/// Parses `bytes` as a document and runs `cmd` on it.
pub fn execute(cmd: Command, bytes: &[u8], overrides: Overrides) -> Outcome {
    let mut doc = match Document::parse(bytes) {
        Ok(d) => d,
        Err(e) => {
            let (kind, message) = match &e {
                DocumentError::MalformedJson(m) => ("MalformedJson", m.clone()),
                DocumentError::UnknownVersion(_) => ("UnknownVersion", e.to_string()),
                DocumentError::SchemaViolation(f) => ("SchemaViolation", f.message.clone()),
            };
            return input_error(cmd, kind, e.path(), message);
        }
    };
    if let Some(s) = overrides.seed {
        doc.options.seed = s;
    }
    if let Some(d) = overrides.degree {
        doc.options.degree = d;
    }
    match commands::run(cmd, &doc) {
        Ok(report) => Outcome {
            exit_code: report.exit_code(),
            output: report.to_json(),
        },
        Err(e) => input_error(cmd, "SchemaViolation", Some(&e.path), e.message),
    }
}
