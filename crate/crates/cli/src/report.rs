//! Machine-readable reports: a summary block plus tabular records.

use std::io::Write;

use serde_json::{json, Map, Value};

use crate::args::Format;
use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Field {
    fn to_json(&self) -> Value {
        match self {
            Field::Int(v) => json!(v),
            Field::Float(v) => {
                if v.is_finite() {
                    json!(v)
                } else {
                    json!(v.to_string())
                }
            }
            Field::Text(v) => json!(v),
        }
    }

    fn to_csv(&self) -> String {
        match self {
            Field::Int(v) => v.to_string(),
            Field::Float(v) => format!("{v:.12e}"),
            Field::Text(v) => v.clone(),
        }
    }
}

#[derive(Debug, Default)]
pub struct Report {
    pub summary: Vec<(String, Field)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Field>>,
}

impl Report {
    pub fn new(columns: &[&str]) -> Self {
        Report {
            summary: Vec::new(),
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn summarize(&mut self, key: &str, value: Field) {
        self.summary.push((key.into(), value));
    }

    pub fn push(&mut self, row: Vec<Field>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Field::to_csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn to_json(&self) -> String {
        let mut summary = Map::new();
        for (k, v) in &self.summary {
            summary.insert(k.clone(), v.to_json());
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (c, v) in self.columns.iter().zip(row) {
                    obj.insert(c.clone(), v.to_json());
                }
                Value::Object(obj)
            })
            .collect();
        let doc = json!({ "summary": Value::Object(summary), "rows": rows });
        serde_json::to_string_pretty(&doc).expect("report serialization")
    }

    /// Write the table to `out` (file or stdout) and the summary to stderr
    /// (CSV keeps a stable schema: header row plus one record per measured
    /// quantity; JSON carries the summary inline).
    pub fn emit(&self, format: Format, out: Option<&std::path::Path>) -> Result<(), CliError> {
        let body = match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        };
        match out {
            Some(path) => {
                std::fs::write(path, body).map_err(|e| CliError::input_msg(&e.to_string()))?
            }
            None => {
                let stdout = std::io::stdout();
                let mut lock = stdout.lock();
                lock.write_all(body.as_bytes())
                    .map_err(|e| CliError::input_msg(&e.to_string()))?;
            }
        }
        if format == Format::Csv && !self.summary.is_empty() {
            let parts: Vec<String> = self
                .summary
                .iter()
                .map(|(k, v)| format!("{k}={}", v.to_csv()))
                .collect();
            eprintln!("{}", parts.join(" "));
        }
        Ok(())
    }
}
