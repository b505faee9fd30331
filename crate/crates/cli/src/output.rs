use std::fmt::Write as _;

use clap::ValueEnum;
use entcard_core::Verdict;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

/// What a command produced: one JSON document and, for checks, a verdict
/// that decides the exit code.
pub struct Outcome {
    pub doc: Value,
    pub verdict: Option<Verdict>,
}

impl Outcome {
    pub fn info(doc: Value) -> Self {
        Outcome { doc, verdict: None }
    }

    pub fn check(doc: Value, verdict: Verdict) -> Self {
        Outcome { doc, verdict: Some(verdict) }
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            None | Some(Verdict::Holds) => 0,
            Some(Verdict::Violated) => 1,
            Some(Verdict::Inconclusive) => 3,
        }
    }
}

pub fn render(doc: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(doc).expect("json values serialize"),
        Format::Table => table(doc),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Scalars become `key  value` lines; arrays of flat objects become aligned
/// tables; anything else is printed as compact JSON.
fn table(doc: &Value) -> String {
    let mut out = String::new();
    let Value::Object(map) = doc else {
        return scalar(doc);
    };
    let width = map.keys().map(String::len).max().unwrap_or(0);
    for (key, value) in map {
        match value {
            Value::Array(rows) if !rows.is_empty() && rows.iter().all(is_flat_object) => {
                let _ = writeln!(out, "{key}:");
                out.push_str(&grid(rows));
            }
            Value::Object(inner) if inner.contains_key("verdict") && inner.contains_key("lhs") => {
                let _ = writeln!(out, "{key:width$}  {}", summary(value));
            }
            Value::Object(inner) if inner.values().all(|v| !v.is_object() && !v.is_array()) => {
                let _ = writeln!(out, "{key}:");
                for (k, v) in inner {
                    let _ = writeln!(out, "  {k}  {}", scalar(v));
                }
            }
            Value::Object(_) | Value::Array(_) => {
                let _ = writeln!(out, "{key:width$}  {value}");
            }
            v => {
                let _ = writeln!(out, "{key:width$}  {}", scalar(v));
            }
        }
    }
    out
}

/// One-line form of a nested check report.
fn summary(report: &Value) -> String {
    let mut line = format!("{}: {} <= {}", scalar(&report["verdict"]), scalar(&report["lhs"]), scalar(&report["rhs"]));
    if let Some(slack) = report.get("slack") {
        let _ = write!(line, " (slack {})", scalar(slack));
    }
    line
}

fn is_flat_object(v: &Value) -> bool {
    matches!(v, Value::Object(m) if m.values().all(|x| !x.is_object()))
}

fn grid(rows: &[Value]) -> String {
    let header: Vec<&String> = rows[0].as_object().map(|m| m.keys().collect()).unwrap_or_default();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| header.iter().map(|h| r.get(h.as_str()).map(scalar).unwrap_or_default()).collect())
        .collect();
    let widths: Vec<usize> = header
        .iter()
        .enumerate()
        .map(|(i, h)| cells.iter().map(|c| c[i].len()).chain([h.len()]).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    let line = |cols: Vec<&str>| {
        let parts: Vec<String> = cols.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        format!("  {}\n", parts.join("  "))
    };
    out.push_str(&line(header.iter().map(|h| h.as_str()).collect()));
    for row in &cells {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn table_lays_out_rows() {
        let doc = json!({"rows": [{"k": 2, "size": "2"}, {"k": 10, "size": "252"}], "verdict": "holds"});
        let text = table(&doc);
        assert!(text.contains("   k  size"));
        assert!(text.contains("  10   252"));
        assert!(text.contains("verdict  holds"));
    }

    #[test]
    fn nested_reports_are_summarized() {
        let doc = json!({"han": {"verdict": "holds", "lhs": 1.0, "rhs": 2.0, "slack": 1.0, "details": {}}});
        assert_eq!(table(&doc), "han  holds: 1.0 <= 2.0 (slack 1.0)\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Outcome::info(json!({})).exit_code(), 0);
        assert_eq!(Outcome::check(json!({}), Verdict::Violated).exit_code(), 1);
        assert_eq!(Outcome::check(json!({}), Verdict::Inconclusive).exit_code(), 3);
    }
}
