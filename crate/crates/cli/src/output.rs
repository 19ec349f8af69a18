//! Reports, errors and the two output formats.
//!
//! Every command builds one JSON value; `table` is a rendering of that same
//! value, so both formats carry identical data.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

/// A finished command: its report, and the reason a mathematical check
/// failed, if one did.
pub struct Outcome {
    pub report: Value,
    pub failure: Option<String>,
}

impl Outcome {
    pub fn ok(report: Value) -> Self {
        Outcome { report, failure: None }
    }

    pub fn checked(report: Value, failure: Option<String>) -> Self {
        Outcome { report, failure }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] ttgeo_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    File { path: PathBuf, source: ttgeo_core::Error },
    #[error("{0}")]
    Usage(String),
    #[error("output differs from the committed expectation:\n{diff}")]
    Mismatch { diff: String, report: Value },
}

impl CliError {
    /// `2` for input that failed validation, `3` for a falsified check.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) | CliError::File { source: e, .. } if !e.is_validation() => 3,
            CliError::Mismatch { .. } => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).expect("JSON values serialise");
            s.push('\n');
            s
        }
        Format::Table => {
            let mut s = String::new();
            table(&mut s, v, 0);
            s
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(if a.is_empty() { "-".into() } else { a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ") })
        }
        _ => None,
    }
}

fn cell(v: &Value) -> String {
    scalar(v).unwrap_or_else(|| v.to_string())
}

fn is_record_list(a: &[Value]) -> bool {
    !a.is_empty() && a.iter().all(|x| x.is_object())
}

fn table(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match (scalar(val), val) {
                    (Some(s), _) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    (None, Value::Array(a)) if is_record_list(a) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        records(out, a, indent + 2);
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}{k}:");
                        table(out, val, indent + 2);
                    }
                }
            }
        }
        Value::Array(a) if is_record_list(a) => records(out, a, indent),
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}[{i}] {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}[{i}]");
                        table(out, x, indent + 2);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", cell(other));
        }
    }
}

fn records(out: &mut String, rows: &[Value], indent: usize) {
    let pad = " ".repeat(indent);
    let mut cols: Vec<String> = Vec::new();
    for r in rows {
        for k in r.as_object().expect("record").keys() {
            if !cols.contains(k) {
                cols.push(k.clone());
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| cols.iter().map(|c| r.get(c).map(cell).unwrap_or_else(|| "-".into())).collect())
        .collect();
    let widths: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].chars().count()).chain([c.chars().count()]).max().unwrap_or(0))
        .collect();
    let line = |vals: &[String]| {
        let parts: Vec<String> = vals.iter().zip(&widths).map(|(v, w)| format!("{v:<w$}")).collect();
        format!("{pad}{}", parts.join("  ").trim_end())
    };
    let _ = writeln!(out, "{}", line(&cols));
    for r in &cells {
        let _ = writeln!(out, "{}", line(r));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn tables_show_every_leaf() {
        let v = json!({"name": "chain3", "primes": [{"object": "x0", "dim": 1}, {"object": "x1", "dim": 2}], "dims": [1, 0]});
        let t = render(&v, Format::Table);
        assert!(t.contains("name: chain3"));
        assert!(t.contains("dims: 1, 0"));
        assert!(t.contains("dim  object"));
        assert!(t.contains("2    x1"));
    }

    #[test]
    fn exit_codes() {
        use ttgeo_core::Error;
        assert_eq!(CliError::Core(Error::NotEI("f".into())).exit_code(), 2);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
        assert_eq!(CliError::Core(Error::Internal("x".into())).exit_code(), 3);
        assert_eq!(CliError::Mismatch { diff: String::new(), report: Value::Null }.exit_code(), 3);
    }
}
