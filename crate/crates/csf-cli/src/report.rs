//! Run reports: a deterministic record of one invocation, rendered either as
//! human text or as a JSON object with all rationals in `"p/q"` form.

use serde_json::{json, Value};

/// FNV-1a 64-bit digest, hex encoded. Stable, dependency-free input
/// fingerprint for the report.
pub fn digest(bytes: &[u8]) -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x00000100000001b3);
    }
    format!("{hash:016x}")
}

pub struct RunReport {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub results: Value,
    pub citations: Vec<String>,
    /// Human rendering, one line per entry.
    pub lines: Vec<String>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            inputs: Vec::new(),
            results: Value::Null,
            citations: Vec::new(),
            lines: Vec::new(),
        }
    }

    pub fn input(&mut self, name: &str, bytes: &[u8]) {
        self.inputs.push((name.to_string(), digest(bytes)));
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self
                .inputs
                .iter()
                .map(|(name, d)| json!({ "name": name, "digest": d }))
                .collect::<Vec<_>>(),
            "results": self.results,
            "citations": self.citations,
        })
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            // `serde_json` maps are sorted; identical inputs give identical bytes.
            serde_json::to_string_pretty(&self.to_json()).expect("report serializes")
        } else {
            self.lines.join("\n")
        }
    }
}
