use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

/// One checked property.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, holds: bool, witness: Option<String>) -> Self {
        Check {
            name: name.into(),
            holds,
            witness,
        }
    }
}

/// The deterministic part of a report: identical inputs give identical bytes.
#[derive(Clone, Debug, Serialize)]
pub struct Canonical {
    pub command: String,
    pub args: Vec<String>,
    /// SHA-256 of each input structure document.
    pub digests: Vec<String>,
    pub checks: Vec<Check>,
    pub data: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timings {
    pub total_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub canonical: Canonical,
    pub timings: Timings,
    #[serde(skip)]
    pub text: String,
}

impl Report {
    pub fn new(command: &str, args: Vec<String>) -> Self {
        Report {
            canonical: Canonical {
                command: command.into(),
                args,
                digests: Vec::new(),
                checks: Vec::new(),
                data: Value::Null,
            },
            timings: Timings { total_ms: 0.0 },
            text: String::new(),
        }
    }

    pub fn digest(&mut self, d: String) {
        self.canonical.digests.push(d);
    }

    pub fn check(&mut self, check: Check) {
        self.canonical.checks.push(check);
    }

    pub fn line(&mut self, line: impl AsRef<str>) {
        self.text.push_str(line.as_ref());
        self.text.push('\n');
    }

    pub fn all_hold(&self) -> bool {
        self.canonical.checks.iter().all(|c| c.holds)
    }

    /// Human-readable rendering. Carries the same checks as the JSON form and no timings.
    pub fn render(&self) -> String {
        let c = &self.canonical;
        let mut out = String::new();
        let _ = writeln!(out, "krasner {}", c.command);
        for d in &c.digests {
            let _ = writeln!(out, "structure sha256:{d}");
        }
        out.push_str(&self.text);
        for check in &c.checks {
            let status = if check.holds { "PASS" } else { "FAIL" };
            let _ = write!(out, "{status}  {}", check.name);
            if let Some(w) = &check.witness {
                let _ = write!(out, "  [{w}]");
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
