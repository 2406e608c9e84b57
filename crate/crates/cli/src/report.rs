use std::fmt::Write as _;
use std::path::Path;

use anyhow::Context;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use orthopack_core::{Certificate, Verdict};

pub const REPORT_SCHEMA: &str = "orthopack.report/1";
pub const SET_SCHEMA: &str = "orthopack.set/1";
pub const FINITE_SCHEMA: &str = "orthopack.finite/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of_file(path: &Path) -> anyhow::Result<(Self, Vec<u8>)> {
        let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        let digest = InputDigest {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(&bytes)),
        };
        Ok((digest, bytes))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub tool_version: String,
    pub command: Vec<String>,
    #[serde(default)]
    pub inputs: Vec<InputDigest>,
    pub certificates: Vec<Certificate>,
    /// Wall-clock milliseconds per certificate; present only on request so
    /// that reports stay byte-identical across runs by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<Vec<u128>>,
}

impl Report {
    pub fn new(command: &[String]) -> Self {
        Report {
            schema: REPORT_SCHEMA.into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            command: command.iter().skip(1).cloned().collect(),
            inputs: Vec::new(),
            certificates: Vec::new(),
            timings_ms: None,
        }
    }

    /// Combined verdict: any FAIL wins, then any UNDECIDABLE.
    pub fn verdict(&self) -> Verdict {
        let vs = self.certificates.iter().map(|c| c.verdict);
        if vs.clone().any(|v| v == Verdict::Fail) {
            Verdict::Fail
        } else if vs.clone().any(|v| v == Verdict::Undecidable) {
            Verdict::Undecidable
        } else {
            Verdict::Pass
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
        Verdict::Undecidable => "UNDECIDABLE",
    }
}

/// Short description of a certificate's witness, if it has one.
fn witness_summary(c: &Certificate) -> String {
    match &c.witness {
        None => String::new(),
        Some(w) => {
            let v = serde_json::to_value(w).expect("witness serializes");
            let kind = v.get("kind").and_then(|k| k.as_str()).unwrap_or("").to_owned();
            let body = serde_json::to_string(&v).unwrap_or_default();
            if body.len() > 80 {
                format!("{} ({} bytes)", kind, body.len())
            } else {
                body
            }
        }
    }
}

pub fn render_text(reports: &[(String, Report)]) -> String {
    let mut out = String::new();
    for (name, r) in reports {
        let _ = writeln!(out, "{}: {} [{}]", name, verdict_name(r.verdict()), r.command.join(" "));
        for c in &r.certificates {
            let tag = if c.evidence_only { " (evidence only)" } else { "" };
            let _ = writeln!(out, "  {:<24} {}{}", c.check, verdict_name(c.verdict), tag);
            let w = witness_summary(c);
            if !w.is_empty() {
                let _ = writeln!(out, "    witness: {}", w);
            }
        }
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

pub fn render_csv(reports: &[(String, Report)]) -> String {
    let mut out = String::from("report,check,verdict,evidence_only,witness\n");
    for (name, r) in reports {
        for c in &r.certificates {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                csv_field(name),
                csv_field(&c.check),
                verdict_name(c.verdict),
                c.evidence_only,
                csv_field(&witness_summary(c))
            );
        }
    }
    out
}
