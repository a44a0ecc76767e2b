use std::io::Write;
use std::path::Path;

use rug::Float;
use serde_json::{Map, Value};
use zl_core::numkernel::format_float;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => {
                if s.contains([',', '"', '\n']) {
                    format!("\"{}\"", s.replace('"', "\"\""))
                } else {
                    s.clone()
                }
            }
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Text(s) => Value::from(s.as_str()),
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// Decimal rendering of multiprecision values with ⌈bits·0.301⌉ digits.
#[derive(Debug, Clone, Copy)]
pub struct NumFmt {
    pub digits: usize,
}

impl NumFmt {
    pub fn new(bits: u32) -> Self {
        Self {
            digits: (f64::from(bits) * 0.301).ceil() as usize,
        }
    }

    pub fn mp(&self, x: &Float) -> Cell {
        Cell::Text(format_float(x, self.digits))
    }

    /// Error bounds and other f64 diagnostics.
    pub fn f(&self, x: f64) -> Cell {
        Cell::Text(f64_text(x))
    }
}

pub fn f64_text(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x:.6e}")
    }
}

/// Rows under a header. A single-record table renders as a JSON object,
/// anything else as an array of objects.
#[derive(Debug, Clone)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub record: bool,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            record: false,
        }
    }

    pub fn record(header: &[&str], row: Vec<Cell>) -> Self {
        let mut t = Self::new(header);
        t.rows.push(row);
        t.record = true;
        t
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for r in &self.rows {
            let line: Vec<String> = r.iter().map(Cell::csv).collect();
            s.push_str(&line.join(","));
            s.push('\n');
        }
        s
    }

    fn object(&self, r: &[Cell]) -> Value {
        let mut m = Map::new();
        for (k, v) in self.header.iter().zip(r) {
            m.insert(k.clone(), v.json());
        }
        Value::Object(m)
    }

    pub fn to_json(&self) -> Value {
        if self.record && self.rows.len() == 1 {
            self.object(&self.rows[0])
        } else {
            Value::Array(self.rows.iter().map(|r| self.object(r)).collect())
        }
    }
}

/// A command result: a table, optionally with a JSON shape of its own.
pub struct Output {
    pub table: Table,
    pub json: Option<Value>,
    pub default_format: Format,
}

impl Output {
    pub fn csv(table: Table) -> Self {
        Self {
            table,
            json: None,
            default_format: Format::Csv,
        }
    }

    pub fn json(table: Table) -> Self {
        Self {
            table,
            json: None,
            default_format: Format::Json,
        }
    }

    pub fn render(&self, format: Option<Format>) -> String {
        match format.unwrap_or(self.default_format) {
            Format::Csv => self.table.to_csv(),
            Format::Json => {
                let v = self.json.clone().unwrap_or_else(|| self.table.to_json());
                let mut s = serde_json::to_string_pretty(&v).expect("JSON values serialize");
                s.push('\n');
                s
            }
        }
    }
}

pub fn write_output(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            let mut h = std::io::stdout().lock();
            h.write_all(text.as_bytes())
                .and_then(|_| h.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}
