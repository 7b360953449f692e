//! Plain-text rendering of a JSON report.

use std::fmt::Write;

use serde_json::Value;

/// Renders `value` as indented `key: value` lines. Arrays of scalars stay on
/// one line; arrays of objects become `-` items.
pub fn render(value: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, value, 0);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Array(items) if items.iter().all(|x| scalar(x).is_some() && !x.is_array()) => {
            Some(format!(
                "[{}]",
                items
                    .iter()
                    .map(|x| scalar(x).unwrap())
                    .collect::<Vec<_>>()
                    .join(", ")
            ))
        }
        Value::Array(items)
            if items
                .iter()
                .all(|x| x.as_array().is_some_and(|a| a.iter().all(Value::is_number))) =>
        {
            Some(format!(
                "[{}]",
                items
                    .iter()
                    .map(|x| scalar(x).unwrap())
                    .collect::<Vec<_>>()
                    .join(", ")
            ))
        }
        Value::Array(_) | Value::Object(_) => None,
        Value::String(s) => Some(s.clone()),
        other => Some(other.to_string()),
    }
}

fn write_value(out: &mut String, value: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match scalar(v) {
                    Some(s) => writeln!(out, "{pad}{k}: {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}{k}:").unwrap();
                        write_value(out, v, depth + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                let mut inner = String::new();
                write_value(&mut inner, item, depth + 1);
                let body = inner.trim_start();
                match scalar(item) {
                    Some(s) => writeln!(out, "{pad}- {s}").unwrap(),
                    None => write!(out, "{pad}- {body}").unwrap(),
                }
            }
        }
        other => writeln!(out, "{pad}{}", scalar(other).unwrap_or_default()).unwrap(),
    }
}
