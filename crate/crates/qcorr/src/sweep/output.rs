//! Deterministic serialization of sweep results.
//!
//! CSV output carries one header row followed by the grid rows: swept
//! parameter columns first, then one column per quantity, then (for swap
//! pipelines) the outcome probability and a zero-probability flag. Floats
//! are printed in scientific notation with 12 significant digits; rows
//! with a zero-probability swap outcome leave their quantity cells empty
//! and set the flag. JSON output additionally carries detected boundary
//! events and the run metadata.

use std::io::Write as _;

use serde_json::{json, Map, Value};

use crate::sweep::{OutputFormat, OutputSpec, SweepResult};
use crate::{Error, Result};

/// Scientific notation with 12 significant digits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.11e}")
}

fn fmt_param(name: &str, value: f64) -> String {
    // Bell outcome indices are small integers; print them as such.
    if name == "bell" {
        format!("{}", value as i64)
    } else {
        fmt_float(value)
    }
}

/// Render a sweep result as CSV.
pub fn to_csv_string(result: &SweepResult) -> String {
    let mut columns: Vec<&str> = result.param_names.iter().map(String::as_str).collect();
    columns.extend(result.quantity_names.iter().map(String::as_str));
    if result.has_probability {
        columns.push("probability");
        columns.push("zero_probability");
    }
    let mut out = String::new();
    out.push_str(&columns.join(","));
    out.push('\n');
    for row in &result.rows {
        let mut cells: Vec<String> = Vec::with_capacity(columns.len());
        for (name, value) in result.param_names.iter().zip(&row.params) {
            cells.push(fmt_param(name, *value));
        }
        for value in &row.values {
            cells.push(match value {
                Some(v) => fmt_float(*v),
                None => String::new(),
            });
        }
        if result.has_probability {
            cells.push(match row.probability {
                Some(p) => fmt_float(p),
                None => String::new(),
            });
            cells.push(if row.zero_probability { "1" } else { "0" }.to_string());
        }
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Render a sweep result as a JSON document (rows, boundaries, metadata).
pub fn to_json_string(result: &SweepResult) -> String {
    let rows: Vec<Value> = result
        .rows
        .iter()
        .map(|row| {
            let mut obj = Map::new();
            for (name, value) in result.param_names.iter().zip(&row.params) {
                if name == "bell" {
                    obj.insert(name.clone(), json!(*value as i64));
                } else {
                    obj.insert(name.clone(), json!(value));
                }
            }
            for (name, value) in result.quantity_names.iter().zip(&row.values) {
                obj.insert(
                    name.clone(),
                    match value {
                        Some(v) => json!(v),
                        None => Value::Null,
                    },
                );
            }
            if result.has_probability {
                obj.insert("probability".to_string(), json!(row.probability));
                obj.insert("zero_probability".to_string(), json!(row.zero_probability));
            }
            Value::Object(obj)
        })
        .collect();

    let boundaries: Vec<Value> = result
        .boundaries
        .iter()
        .map(|event| {
            let slice: Map<String, Value> = event
                .slice
                .iter()
                .map(|(name, value)| (name.as_str().to_string(), json!(value)))
                .collect();
            json!({
                "quantity": event.quantity.as_str(),
                "slice": slice,
                "sudden_death": event.sudden_death,
                "revival": event.revival.map(|(d, r)| vec![d, r]),
            })
        })
        .collect();

    let doc = json!({
        "param_names": result.param_names,
        "quantity_names": result.quantity_names,
        "rows": rows,
        "boundaries": boundaries,
        "metadata": result.metadata,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("JSON tree with no non-string keys");
    text.push('\n');
    text
}

/// Render in the requested format.
pub fn render(result: &SweepResult, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => to_csv_string(result),
        OutputFormat::Json => to_json_string(result),
    }
}

/// Write a sweep result to the destination named by `spec` (standard
/// output when it has no path).
pub fn write_output(result: &SweepResult, spec: &OutputSpec) -> Result<()> {
    let text = render(result, spec.format);
    match &spec.path {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Io(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Error::Io(format!("cannot write to stdout: {e}"))),
    }
}
