//! The report every command produces, in human-readable and JSON form.
//!
//! A report is one object per invocation: the command name, a digest of each
//! input file, the cutoff (when the command takes one), a command-specific
//! `result`, and a list of named checks.  JSON output keys are sorted and
//! numeric tables are arrays indexed by degree, so two identical runs emit
//! byte-identical bytes.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use sullivan::cdga::RankTable;

/// One named verification with its verdict and a human-readable detail.
#[derive(Debug, Clone)]
pub struct CheckItem {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckItem {
    pub fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        CheckItem {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        }
    }
}

/// An input file together with the SHA-256 of its bytes.
#[derive(Debug, Clone)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn new(path: &str, bytes: &[u8]) -> Self {
        InputDigest {
            path: path.to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

/// The full outcome of one command invocation.
#[derive(Debug, Clone)]
pub struct CommandReport {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub cutoff: Option<u32>,
    pub result: Value,
    /// Preformatted human-readable blocks, printed between the header and
    /// the check lines in table mode; not part of the JSON output.
    pub sections: Vec<String>,
    pub checks: Vec<CheckItem>,
}

impl CommandReport {
    pub fn new(command: &str, inputs: Vec<InputDigest>, cutoff: Option<u32>) -> Self {
        CommandReport {
            command: command.to_string(),
            inputs,
            cutoff,
            result: Value::Null,
            sections: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(CheckItem::new(name, pass, detail));
    }

    pub fn section(&mut self, text: impl Into<String>) {
        self.sections.push(text.into());
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Serialize with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut root = Map::new();
        root.insert("command".to_string(), json!(self.command));
        root.insert(
            "inputs".to_string(),
            Value::Array(
                self.inputs
                    .iter()
                    .map(|i| json!({"path": i.path, "sha256": i.sha256}))
                    .collect(),
            ),
        );
        root.insert("cutoff".to_string(), json!(self.cutoff));
        root.insert("result".to_string(), self.result.clone());
        root.insert(
            "checks".to_string(),
            Value::Array(
                self.checks
                    .iter()
                    .map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail}))
                    .collect(),
            ),
        );
        let mut out = serde_json::to_string_pretty(&Value::Object(root))
            .expect("report serialization cannot fail");
        out.push('\n');
        out
    }

    /// Render the human-readable form.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for i in &self.inputs {
            out.push_str(&format!("input: {}  sha256:{}\n", i.path, i.sha256));
        }
        if let Some(c) = self.cutoff {
            out.push_str(&format!("cutoff: {}\n", c));
        }
        for s in &self.sections {
            out.push('\n');
            out.push_str(s.trim_end());
            out.push('\n');
        }
        if !self.checks.is_empty() {
            out.push('\n');
            for c in &self.checks {
                let verdict = if c.pass { "PASS" } else { "FAIL" };
                out.push_str(&format!("check {}: {} — {}\n", c.name, verdict, c.detail));
            }
        }
        out
    }
}

/// A rank table as a JSON array indexed by degree.
pub fn ranks_json(t: &RankTable) -> Value {
    Value::Array(t.ranks().iter().map(|&r| json!(r)).collect())
}

/// A labelled rank table block for human output.
pub fn ranks_section(label: &str, t: &RankTable) -> String {
    format!("{}\n{}", label, t)
}
