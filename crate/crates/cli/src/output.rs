//! CSV and JSON rendering with a fixed number of significant digits.

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// One output cell.
#[derive(Debug, Clone)]
pub enum Cell {
    Int(u64),
    Text(String),
    Num(f64),
    Maybe(Option<f64>),
    Flag(bool),
}

/// `x` rounded to `digits` significant digits, printed without exponent
/// unless the magnitude is extreme. Trailing zeros are dropped.
pub fn format_number(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    if !(-6..=15).contains(&exponent) {
        return format!("{:.*e}", digits.saturating_sub(1), x);
    }
    let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
    let text = format!("{x:.decimals$}");
    let trimmed = if text.contains('.') {
        text.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        text
    };
    if trimmed == "-0" {
        "0".to_string()
    } else {
        trimmed
    }
}

fn rounded(x: f64, digits: usize) -> Value {
    let text = format_number(x, digits);
    text.parse::<f64>()
        .ok()
        .and_then(serde_json::Number::from_f64)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

fn csv_cell(cell: &Cell, digits: usize) -> String {
    match cell {
        Cell::Int(v) => v.to_string(),
        Cell::Text(t) => t.clone(),
        Cell::Num(x) => format_number(*x, digits),
        Cell::Maybe(Some(x)) => format_number(*x, digits),
        Cell::Maybe(None) => String::new(),
        Cell::Flag(b) => b.to_string(),
    }
}

fn json_cell(cell: &Cell, digits: usize) -> Value {
    match cell {
        Cell::Int(v) => Value::from(*v),
        Cell::Text(t) => Value::from(t.clone()),
        Cell::Num(x) => rounded(*x, digits),
        Cell::Maybe(Some(x)) => rounded(*x, digits),
        Cell::Maybe(None) => Value::Null,
        Cell::Flag(b) => Value::from(*b),
    }
}

/// Renders rows under a fixed header. JSON output is an array of objects
/// keyed by the header names.
pub fn render(header: &[&str], rows: &[Vec<Cell>], format: Format, digits: usize) -> String {
    match format {
        Format::Csv => {
            let mut out = header.join(",");
            out.push('\n');
            for row in rows {
                let cells: Vec<String> = row.iter().map(|c| csv_cell(c, digits)).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let records: Vec<Value> = rows
                .iter()
                .map(|row| {
                    let map: Map<String, Value> = header
                        .iter()
                        .zip(row)
                        .map(|(k, c)| (k.to_string(), json_cell(c, digits)))
                        .collect();
                    Value::Object(map)
                })
                .collect();
            let mut out = serde_json::to_string_pretty(&records).expect("JSON values always serialize");
            out.push('\n');
            out
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("report always serializes");
    out.push('\n');
    out
}
