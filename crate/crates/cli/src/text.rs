//! Plain-text rendering of JSON reports as indented key/value listings.

use std::fmt::Write;

use serde_json::Value;

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".to_string()),
        Value::Bool(b) => Some(if *b { "yes" } else { "no" }.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", items.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn walk(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let label = k.replace('_', " ");
                match scalar(x) {
                    Some(s) => writeln!(out, "{pad}{label}: {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}{label}:").unwrap();
                        walk(out, x, indent + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                writeln!(out, "{pad}(none)").unwrap();
            }
            for (i, x) in items.iter().enumerate() {
                match scalar(x) {
                    Some(s) => writeln!(out, "{pad}- {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}#{}", i + 1).unwrap();
                        walk(out, x, indent + 1);
                    }
                }
            }
        }
        other => writeln!(out, "{pad}{}", scalar(other).unwrap_or_default()).unwrap(),
    }
}

pub fn render(v: &Value) -> String {
    let mut out = String::new();
    walk(&mut out, v, 0);
    out
}
