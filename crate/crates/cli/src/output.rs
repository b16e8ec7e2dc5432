//! JSON and CSV emitters. Floats are written with 17 significant digits so
//! every value reparses to the same double.

use std::io::Write;
use std::str::FromStr;

use serde_json::{Map, Number, Value};

use crate::args::OutputFormat;

/// One output cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(u64),
    Text(String),
    Bool(bool),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(u64::from(v))
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

/// Text form of a float; non-finite values use `inf`, `-inf` and `nan`.
pub fn float_text(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{v:.16e}")
    }
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Float(v) => float_text(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Float(v) if v.is_finite() => {
                Value::Number(Number::from_str(&float_text(*v)).expect("finite float literal"))
            }
            Cell::Float(v) => Value::String(float_text(*v)),
            Cell::Int(v) => Value::Number((*v).into()),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
        }
    }
}

/// Ordered `(name, cell)` pairs.
pub type Record = Vec<(&'static str, Cell)>;

fn object(record: &Record) -> Value {
    Value::Object(
        record
            .iter()
            .map(|(k, v)| ((*k).to_owned(), v.json()))
            .collect::<Map<_, _>>(),
    )
}

fn write_json(out: &mut impl Write, value: &Value) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

fn write_csv(out: &mut impl Write, header: &[&str], rows: &[Vec<String>]) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()
}

/// A single evaluated quantity: `{kind, inputs, value}`.
pub fn emit_eval(
    out: &mut impl Write,
    format: OutputFormat,
    kind: &str,
    inputs: &Record,
    value: f64,
) -> std::io::Result<()> {
    match format {
        OutputFormat::Json => {
            let mut top = Map::new();
            top.insert("kind".into(), Value::String(kind.into()));
            top.insert("inputs".into(), object(inputs));
            top.insert("value".into(), Cell::Float(value).json());
            write_json(out, &Value::Object(top))
        }
        OutputFormat::Csv => {
            let header: Vec<&str> = std::iter::once("kind")
                .chain(inputs.iter().map(|(k, _)| *k))
                .chain(std::iter::once("value"))
                .collect();
            let row: Vec<String> = std::iter::once(kind.to_owned())
                .chain(inputs.iter().map(|(_, v)| v.text()))
                .chain(std::iter::once(float_text(value)))
                .collect();
            write_csv(out, &header, &[row])
        }
    }
}

/// Rows sharing one set of columns: a JSON array of objects, or CSV.
pub fn emit_table(
    out: &mut impl Write,
    format: OutputFormat,
    rows: &[Record],
) -> std::io::Result<()> {
    match format {
        OutputFormat::Json => write_json(out, &Value::Array(rows.iter().map(object).collect())),
        OutputFormat::Csv => {
            let header: Vec<&str> = rows
                .first()
                .map(|r| r.iter().map(|(k, _)| *k).collect())
                .unwrap_or_default();
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| r.iter().map(|(_, v)| v.text()).collect())
                .collect();
            write_csv(out, &header, &body)
        }
    }
}

/// A value stream with a KS summary.
///
/// JSON: `{inputs, values: [...], ks: {...}}`. CSV: `record,index,value` rows,
/// one `value` row per element followed by one row per KS field.
pub fn emit_values_with_ks(
    out: &mut impl Write,
    format: OutputFormat,
    inputs: &Record,
    values: &[f64],
    ks: &Record,
) -> std::io::Result<()> {
    match format {
        OutputFormat::Json => {
            let mut top = Map::new();
            top.insert("inputs".into(), object(inputs));
            top.insert(
                "values".into(),
                Value::Array(values.iter().map(|&v| Cell::Float(v).json()).collect()),
            );
            top.insert("ks".into(), object(ks));
            write_json(out, &Value::Object(top))
        }
        OutputFormat::Csv => {
            let mut rows: Vec<Vec<String>> = values
                .iter()
                .enumerate()
                .map(|(i, &v)| vec!["value".to_owned(), i.to_string(), float_text(v)])
                .collect();
            rows.extend(
                ks.iter()
                    .map(|(k, v)| vec![format!("ks_{k}"), String::new(), v.text()]),
            );
            write_csv(out, &["record", "index", "value"], &rows)
        }
    }
}
