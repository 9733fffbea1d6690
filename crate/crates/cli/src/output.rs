//! Deterministic CSV/JSON writers.
//!
//! Same input, same bytes: floats are printed with 17 significant digits
//! (full round-trip precision for doubles), keys keep insertion order, and no
//! timestamps or environment data ever enter a data file. CSV carries the
//! data only; JSON wraps it as `{meta, columns, rows}`.

use std::fmt::Write as _;

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Float(f64),
    Int(i64),
    Str(String),
    Bool(bool),
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Float(x)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Str(s.to_string())
    }
}

/// A column-labelled result table with ordered metadata.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub meta: Vec<(&'static str, Value)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

/// Output format of a data file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format `{other}`; expected csv or json")),
        }
    }
}

/// 17 significant digits: enough to reproduce any double bit-exactly.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out
}

fn csv_value(v: &Value) -> String {
    match v {
        Value::Float(x) => fmt_float(*x),
        Value::Int(i) => i.to_string(),
        Value::Str(s) => csv_escape(s),
        Value::Bool(b) => b.to_string(),
    }
}

fn json_value(v: &Value) -> String {
    match v {
        Value::Float(x) => fmt_float(*x),
        Value::Int(i) => i.to_string(),
        Value::Str(s) => format!("\"{}\"", json_escape(s)),
        Value::Bool(b) => b.to_string(),
    }
}

impl Table {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }

    /// Comma-separated, `.` decimal, LF line endings, header row mandatory.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(csv_value).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Single top-level object `{meta: {...}, columns: [...], rows: [[...]]}`.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n  \"meta\": {");
        for (i, (k, v)) in self.meta.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "\n    \"{}\": {}", json_escape(k), json_value(v));
        }
        out.push_str("\n  },\n  \"columns\": [");
        for (i, c) in self.columns.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            let _ = write!(out, "\"{}\"", json_escape(c));
        }
        out.push_str("],\n  \"rows\": [");
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let cells: Vec<String> = row.iter().map(json_value).collect();
            let _ = write!(out, "\n    [{}]", cells.join(", "));
        }
        out.push_str("\n  ]\n}\n");
        out
    }
}
