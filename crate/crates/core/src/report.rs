//! Line-oriented structured reports ("report-v1") shared by the CLI and
//! the acceptance suite, plus a stable digest for input fingerprinting.

use std::fmt::Write as _;

/// FNV-1a 64-bit digest: deterministic across runs and platforms.
pub fn digest(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

pub fn digest_hex(bytes: &[u8]) -> String {
    format!("{:016x}", digest(bytes))
}

/// A record in the standard evaluation format: operation, inputs digest,
/// value, error estimate, tolerance, pass/fail.
#[derive(Clone, Debug)]
pub struct EvalRecord {
    pub operation: String,
    pub inputs_digest: String,
    pub value: String,
    pub error_estimate: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl EvalRecord {
    pub fn line(&self) -> String {
        format!(
            "record op={} digest={} value={} error={:.6e} tol={:.6e} pass={}",
            self.operation, self.inputs_digest, self.value, self.error_estimate,
            self.tolerance, self.pass
        )
    }
}

/// Builder for a report-v1 document.
#[derive(Clone, Debug, Default)]
pub struct Report {
    lines: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report::default();
        r.lines.push("report-v1".to_string());
        r.lines.push(format!("command: {command}"));
        r
    }

    pub fn status(&mut self, status: &str) -> &mut Self {
        self.lines.push(format!("status: {status}"));
        self
    }

    pub fn field(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        self.lines.push(format!("{key}: {value}"));
        self
    }

    /// Floating values printed with fixed precision for byte-stable output.
    pub fn float(&mut self, key: &str, value: f64) -> &mut Self {
        self.lines.push(format!("{key}: {value:.12e}"));
        self
    }

    pub fn complex(&mut self, key: &str, re: f64, im: f64) -> &mut Self {
        self.lines.push(format!("{key}: [{re:.12e}, {im:.12e}]"));
        self
    }

    pub fn record(&mut self, rec: &EvalRecord) -> &mut Self {
        self.lines.push(rec.line());
        self
    }

    pub fn raw(&mut self, line: impl Into<String>) -> &mut Self {
        self.lines.push(line.into());
        self
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for line in &self.lines {
            let _ = writeln!(out, "{line}");
        }
        out
    }
}
