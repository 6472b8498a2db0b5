use std::fmt;
use std::path::Path;

use anyhow::{Context, Result};
use garc_core::io::write_json;
use garc_core::Field;
use serde::Serialize;

pub const ENVELOPE_SCHEMA: &str = "garc-cli/1";

/// Exit statuses shared by every subcommand.
pub mod exit {
    pub const OK: u8 = 0;
    pub const CANDIDATE: u8 = 2;
    pub const INCONCLUSIVE: u8 = 3;
    pub const USAGE: u8 = 64;
    pub const DATA: u8 = 65;
    pub const INTERNAL: u8 = 70;
}

/// A command-line problem the parser could not catch on its own.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

/// Two computations that must agree did not.
#[derive(Debug)]
pub struct Internal(pub String);

impl fmt::Display for Internal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Internal {}

#[derive(Clone, Debug, Serialize)]
pub struct Invocation {
    pub args: Vec<String>,
    pub seed: u64,
}

impl Invocation {
    pub fn capture(seed: u64) -> Invocation {
        Invocation { args: std::env::args().skip(1).collect(), seed }
    }
}

/// Every JSON report the binary writes. `timestamp` is the only field that
/// differs between two runs of the same invocation.
#[derive(Debug, Serialize)]
pub struct Envelope<T> {
    pub schema: &'static str,
    pub command: &'static str,
    pub invocation: Invocation,
    pub timestamp: String,
    pub exit_code: u8,
    pub result: T,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(command: &'static str, invocation: Invocation, exit_code: u8, result: T) -> Envelope<T> {
        Envelope {
            schema: ENVELOPE_SCHEMA,
            command,
            invocation,
            timestamp: chrono::Utc::now().to_rfc3339(),
            exit_code,
            result,
        }
    }
}

/// Where the report goes: a file, stdout as JSON, or neither.
#[derive(Clone, Debug)]
pub struct Sink<'a> {
    pub out: Option<&'a Path>,
    pub json: bool,
}

impl Sink<'_> {
    pub fn emit<T: Serialize>(&self, envelope: &Envelope<T>) -> Result<()> {
        if let Some(path) = self.out {
            write_json(path, envelope).with_context(|| format!("writing report to {}", path.display()))?;
        }
        if self.json {
            println!("{}", serde_json::to_string_pretty(envelope)?);
        }
        Ok(())
    }

    /// Whether human-readable text should go to stdout.
    pub fn human(&self) -> bool {
        !self.json
    }
}

pub fn parse_field(s: &str) -> std::result::Result<Field, String> {
    let t = s.trim();
    match t {
        "Q" | "QQ" | "q" | "rationals" => return Ok(Field::Rationals),
        _ => {}
    }
    let digits = t
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| t.strip_prefix("GF"))
        .or_else(|| t.strip_prefix("F"))
        .or_else(|| t.strip_prefix("Fp:"))
        .unwrap_or(t);
    let p: u64 = digits.parse().map_err(|_| format!("unrecognized field {s:?}; use Q, F<p> or GF(<p>)"))?;
    Field::prime(p).map_err(|e| e.to_string())
}

pub fn dims_line(dims: &[usize]) -> String {
    dims.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fields() {
        assert_eq!(parse_field("Q").unwrap(), Field::Rationals);
        assert_eq!(parse_field("F5").unwrap(), Field::prime(5).unwrap());
        assert_eq!(parse_field("GF(7)").unwrap(), Field::prime(7).unwrap());
        assert_eq!(parse_field("2").unwrap(), Field::prime(2).unwrap());
        assert!(parse_field("F4").is_err());
        assert!(parse_field("R").is_err());
    }
}
