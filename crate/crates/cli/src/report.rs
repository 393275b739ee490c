use std::fmt::Debug;
use std::fs;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const TOOL_VERSION: &str = concat!("qcoh ", env!("CARGO_PKG_VERSION"));

#[derive(Debug)]
pub enum Failure {
    Io(String),
    Validation { kind: String, message: String },
    Precondition { kind: String, message: String },
    ExampleFailed,
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Io(_) => 1,
            Failure::Validation { .. } => 2,
            Failure::Precondition { .. } => 3,
            Failure::ExampleFailed => 4,
        }
    }

    pub fn validation(err: impl Debug + std::fmt::Display) -> Failure {
        Failure::Validation { kind: kind_of(&err), message: err.to_string() }
    }

    pub fn precondition(err: impl Debug + std::fmt::Display) -> Failure {
        Failure::Precondition { kind: kind_of(&err), message: err.to_string() }
    }

    pub fn diagnostic(&self) -> Value {
        let (class, kind, message) = match self {
            Failure::Io(m) => ("io", "Io", m.as_str()),
            Failure::Validation { kind, message } => ("validation", kind.as_str(), message.as_str()),
            Failure::Precondition { kind, message } => ("precondition", kind.as_str(), message.as_str()),
            Failure::ExampleFailed => ("example", "AssertionFailed", "an embedded assertion failed"),
        };
        serde_json::json!({ "error": class, "kind": kind, "message": message })
    }
}

/// The innermost variant name of a nested error enum, e.g. `Cat(AssociativityViolation {..})`.
fn kind_of(err: &impl Debug) -> String {
    let text = format!("{err:?}");
    let mut rest = text.as_str();
    loop {
        let end = rest.find(|c: char| !c.is_alphanumeric() && c != '_').unwrap_or(rest.len());
        let ident = &rest[..end];
        let tail = &rest[end..];
        match tail.strip_prefix('(') {
            Some(inner) if inner.starts_with(|c: char| c.is_ascii_uppercase()) => rest = inner,
            _ => return ident.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Input files read so far, in order.
#[derive(Default)]
pub struct Inputs {
    files: Vec<InputDigest>,
}

impl Inputs {
    pub fn read(&mut self, path: &str) -> Result<String, Failure> {
        let bytes = fs::read(path).map_err(|e| Failure::Io(format!("{path}: {e}")))?;
        self.files.push(InputDigest { path: path.to_string(), sha256: hex(&Sha256::digest(&bytes)) });
        String::from_utf8(bytes).map_err(|e| Failure::Validation { kind: "Malformed".into(), message: format!("{path}: {e}") })
    }

    pub fn json<T: serde::de::DeserializeOwned>(&mut self, path: &str) -> Result<T, Failure> {
        let text = self.read(path)?;
        serde_json::from_str(&text)
            .map_err(|e| Failure::Validation { kind: "Malformed".into(), message: format!("{path}: {e}") })
    }

    pub fn into_digests(self) -> Vec<InputDigest> {
        self.files
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Results of a command, with a table for Markdown output.
pub struct Outcome {
    pub results: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub notes: Vec<String>,
    pub passed: bool,
}

impl Outcome {
    pub fn new(results: impl Serialize) -> Outcome {
        Outcome {
            results: serde_json::to_value(results).expect("serializable results"),
            header: Vec::new(),
            rows: Vec::new(),
            notes: Vec::new(),
            passed: true,
        }
    }

    pub fn table(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Outcome {
        self.header = header.iter().map(|s| s.to_string()).collect();
        self.rows = rows;
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Outcome {
        self.notes.push(note.into());
        self
    }
}

#[derive(Serialize)]
pub struct Parameters {
    pub max_degree: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
    pub ring: String,
    pub seed: u64,
}

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub parameters: Parameters,
    pub results: Value,
    pub tool_version: &'static str,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable report");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self, outcome: &Outcome) -> String {
        let mut s = format!("# qcoh {}\n\n", self.command);
        s.push_str(&format!("- tool version: {}\n", self.tool_version));
        let p = &self.parameters;
        s.push_str(&format!("- ring: {}, max degree: {}, seed: {}\n", p.ring, p.max_degree, p.seed));
        if let Some(n) = p.degree {
            s.push_str(&format!("- degree: {n}\n"));
        }
        for input in &self.inputs {
            s.push_str(&format!("- input `{}` sha256 `{}`\n", input.path, input.sha256));
        }
        s.push('\n');
        if !outcome.header.is_empty() {
            s.push_str(&format!("| {} |\n", outcome.header.join(" | ")));
            s.push_str(&format!("|{}\n", "---|".repeat(outcome.header.len())));
            for row in &outcome.rows {
                s.push_str(&format!("| {} |\n", row.join(" | ")));
            }
            s.push('\n');
        } else {
            s.push_str("```json\n");
            s.push_str(&serde_json::to_string_pretty(&self.results).expect("serializable results"));
            s.push_str("\n```\n\n");
        }
        for note in &outcome.notes {
            s.push_str(&format!("{note}\n"));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Debug)]
    enum Inner {
        AssociativityViolation { _h: usize },
    }

    #[allow(dead_code)]
    #[derive(Debug)]
    enum Outer {
        Cat(Inner),
        Plain,
    }

    #[test]
    fn kinds_unwrap_nesting() {
        assert_eq!(kind_of(&Outer::Cat(Inner::AssociativityViolation { _h: 1 })), "AssociativityViolation");
        assert_eq!(kind_of(&Outer::Plain), "Plain");
        assert_eq!(kind_of(&Inner::AssociativityViolation { _h: 0 }), "AssociativityViolation");
    }
}
