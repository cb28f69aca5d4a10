//! Machine-readable output: one JSON or CSV record per invocation.
//!
//! Determinism contract: identical invocations produce byte-identical
//! output. JSON object keys are sorted (serde_json's default map is a
//! BTreeMap), rationals and big integers cross the boundary as strings
//! ("p/q" and decimal — factorial-scale values exceed both i64 and the
//! f64 mantissa), and floats are rounded to 12 significant digits before
//! printing. CSV quotes every field, so "p/q" survives any dialect.

use std::io::Write;

use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Violation,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Violation => "violation",
            Status::Error => "error",
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Violation => 1,
            Status::Error => 2,
        }
    }
}

/// A flat table mirroring the JSON payload, for the CSV format.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: Vec<&'static str>) -> Self {
        Self {
            headers,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }
}

/// Everything one command invocation produces.
#[derive(Debug, Clone)]
pub struct OutputRecord {
    pub command: &'static str,
    pub params: Value,
    pub status: Status,
    pub payload: Value,
    /// First failing index with both sides, when status is `Violation`.
    pub violation: Option<Value>,
    pub table: Table,
}

impl OutputRecord {
    pub fn error(command: &'static str, params: Value, message: String) -> Self {
        Self {
            command,
            params,
            status: Status::Error,
            payload: json!({ "error": message }),
            violation: None,
            table: Table {
                headers: vec!["error"],
                rows: vec![vec![message]],
            },
        }
    }

    pub fn to_json(&self) -> String {
        let mut map = Map::new();
        map.insert("command".into(), Value::String(self.command.into()));
        map.insert("params".into(), self.params.clone());
        map.insert("status".into(), Value::String(self.status.as_str().into()));
        map.insert("payload".into(), self.payload.clone());
        if let Some(v) = &self.violation {
            map.insert("violation".into(), v.clone());
        }
        let mut text =
            serde_json::to_string_pretty(&Value::Object(map)).expect("record serializes");
        text.push('\n');
        text
    }

    pub fn to_csv(&self) -> String {
        let mut writer = csv::WriterBuilder::new()
            .quote_style(csv::QuoteStyle::Always)
            .from_writer(Vec::new());
        writer
            .write_record(&self.table.headers)
            .expect("csv header");
        for row in &self.table.rows {
            writer.write_record(row).expect("csv row");
        }
        String::from_utf8(writer.into_inner().expect("csv buffer")).expect("csv is utf-8")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    pub fn write_to(&self, format: Format, output: Option<&std::path::Path>) -> std::io::Result<()> {
        let text = self.render(format);
        match output {
            Some(path) => std::fs::write(path, text),
            None => {
                let stdout = std::io::stdout();
                let mut lock = stdout.lock();
                lock.write_all(text.as_bytes())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// A float rounded to 12 significant digits, printed as the shortest
/// decimal of the rounded value. Infinities become "inf"/"-inf".
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("round-trip");
    let abs = rounded.abs();
    if (1e-4..1e15).contains(&abs) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}
