//! Rendering of tables and reports as CSV, JSON or aligned text.

use std::io::Write;

use clap::ValueEnum;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Pretty,
}

/// Rounds to 15 significant digits.
pub fn round15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

/// Shortest decimal string of `round15(x)`, positional for moderate
/// magnitudes and scientific otherwise.
pub fn fmt_num(x: f64) -> String {
    let r = round15(x);
    if r == 0.0 || (1e-5..1e16).contains(&r.abs()) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

/// Applies [`round15`] to every float inside a JSON value.
pub fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => json!(round15(n.as_f64().unwrap())),
        Value::Array(items) => Value::Array(items.into_iter().map(round_value).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_value(v))).collect()),
        other => other,
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => fmt_num(x),
            _ => n.to_string(),
        },
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(cell)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.columns.iter().cloned().zip(row.iter().cloned().map(round_value)).collect();
                Value::Object(obj)
            })
            .collect();
        json!({ "schema": SCHEMA_VERSION, "columns": self.columns, "rows": rows })
    }

    pub fn to_pretty(&self) -> String {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(cell).collect()).collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|c| cells.iter().map(|r| r[c].len()).chain([self.columns[c].len()]).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        let line = |items: &[String]| {
            items.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect::<Vec<_>>().join("  ")
        };
        out.push_str(&line(&self.columns));
        out.push('\n');
        for r in &cells {
            out.push_str(&line(r));
            out.push('\n');
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => format!("{}\n", self.to_json()),
            Format::Pretty => self.to_pretty(),
        }
    }
}

/// A JSON report with the schema version as its first field.
pub fn report(body: Value) -> Value {
    let mut obj = Map::new();
    obj.insert("schema".into(), json!(SCHEMA_VERSION));
    if let Value::Object(fields) = round_value(body) {
        obj.extend(fields);
    }
    Value::Object(obj)
}

pub fn render_report(report: &Value, format: Format) -> String {
    match format {
        Format::Pretty => format!("{}\n", serde_json::to_string_pretty(report).expect("serializable")),
        _ => format!("{report}\n"),
    }
}

pub fn emit(text: &str) -> std::io::Result<()> {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    lock.write_all(text.as_bytes())?;
    lock.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_digits() {
        assert_eq!(fmt_num(0.5), "0.5");
        assert_eq!(fmt_num(1.0 / 3.0), "0.333333333333333");
        assert_eq!(fmt_num(2.0 / 3.0), "0.666666666666667");
        assert_eq!(fmt_num(1e-20), "1e-20");
        assert_eq!(fmt_num(-123456.789), "-123456.789");
        assert_eq!(fmt_num(0.0), "0");
        assert_eq!(fmt_num(6.02214076e23), "6.02214076e23");
    }

    #[test]
    fn csv_and_json_tables() {
        let mut t = Table::new(&["n", "x", "flag", "opt"]);
        t.push(vec![json!(4), json!(0.1 + 0.2), json!(true), Value::Null]);
        assert_eq!(t.to_csv(), "n,x,flag,opt\n4,0.3,true,\n");
        let j = t.to_json();
        assert_eq!(j["schema"], 1);
        assert_eq!(j["rows"][0]["x"], json!(0.3));
        assert!(t.to_pretty().starts_with("n    x  flag  opt\n"));
    }

    #[test]
    fn report_puts_schema_first() {
        let r = report(json!({"a": 1.0 / 3.0}));
        assert!(r.to_string().starts_with("{\"schema\":1,"));
        assert_eq!(r["a"], json!(0.333333333333333));
    }
}
