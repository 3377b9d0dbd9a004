use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Text,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => Err(format!("unknown format `{s}` (expected json, csv or text)")),
        }
    }
}

/// The output of one command: structured documents for JSON and a flat
/// table carrying the same numbers for CSV and text.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub ok: bool,
    pub results: Vec<Value>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Report {
    pub fn new(command: &'static str, columns: &[&'static str]) -> Self {
        Report { command, ok: true, results: Vec::new(), columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, document: Value, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.results.push(document);
        self.rows.push(row);
    }

    /// Records a theorem check; a failed one turns the exit status into a mismatch.
    pub fn require(&mut self, passed: bool) {
        self.ok &= passed;
    }

    pub fn to_json(&self) -> Value {
        json!({ "command": self.command, "ok": self.ok, "results": self.results })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }

    fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(cell)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(cell).collect()).collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|j| cells.iter().map(|r| r[j].len()).chain([self.columns[j].len()]).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        let line = |out: &mut String, items: &[String]| {
            let padded: Vec<String> = items.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
            let _ = writeln!(out, "{}", padded.join("  ").trim_end());
        };
        line(&mut out, &self.columns.iter().map(|c| c.to_string()).collect::<Vec<_>>());
        for r in &cells {
            line(&mut out, r);
        }
        let _ = writeln!(out, "{}: {}", self.command, if self.ok { "ok" } else { "MISMATCH" });
        out
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
