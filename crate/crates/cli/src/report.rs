use serde_json::{json, Value};
use thiserror::Error;

pub const EXIT_USAGE: u8 = 64;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
}

pub fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

pub fn failed(e: impl std::fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
    Inconclusive(String),
}

#[derive(Debug)]
pub struct Report {
    pub command: &'static str,
    pub input: Value,
    pub defaults: Value,
    pub verdict: Verdict,
    pub result: Value,
}

impl Report {
    pub fn new(command: &'static str, input: Value, verdict: Verdict, result: Value) -> Self {
        Report {
            command,
            input,
            defaults: json!({
                "confluence_deg": crate::args::DEFAULT_CONFLUENCE_DEG,
                "hopf_deg": crate::args::DEFAULT_HOPF_DEG,
                "bigcell_deg": crate::args::DEFAULT_BIGCELL_DEG,
                "induction_cutoff": crate::args::DEFAULT_CUTOFF,
            }),
            verdict,
            result,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.verdict {
            Verdict::Pass => 0,
            Verdict::Fail(_) => 1,
            Verdict::Inconclusive(_) => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        let (verdict, reason) = match &self.verdict {
            Verdict::Pass => ("pass", None),
            Verdict::Fail(r) => ("fail", Some(r)),
            Verdict::Inconclusive(r) => ("inconclusive", Some(r)),
        };
        let mut out = json!({
            "command": self.command,
            "input": self.input,
            "defaults": self.defaults,
            "verdict": verdict,
            "result": self.result,
        });
        if let Some(r) = reason {
            out["reason"] = json!(r);
        }
        out
    }

    pub fn render(&self, indent: usize) -> String {
        let value = self.to_json();
        if indent == 0 {
            return value.to_string();
        }
        let pad = " ".repeat(indent);
        let mut buf = Vec::new();
        let fmt = serde_json::ser::PrettyFormatter::with_indent(pad.as_bytes());
        let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
        serde::Serialize::serialize(&value, &mut ser).expect("JSON values serialize");
        String::from_utf8(buf).expect("serde_json writes UTF-8")
    }
}
