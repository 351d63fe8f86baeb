//! Lossy human-readable rendering of a response. JSON stays the contract.

use serde_json::Value;

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(xs) if xs.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", xs.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn walk(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        walk(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}[{i}]\n"));
                        walk(x, indent + 1, out);
                    }
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v).unwrap_or_default())),
    }
}

/// Command and verdict first, then the result and certificate count.
pub fn render(body: &Value) -> String {
    let mut out = String::new();
    if let Some(c) = body.get("command").and_then(Value::as_str) {
        out.push_str(&format!("command: {c}\n"));
    }
    if let Some(e) = body.get("error") {
        out.push_str("error:\n");
        walk(e, 1, &mut out);
        return out;
    }
    if let Some(v) = body.get("verdict") {
        out.push_str(&format!("verdict: {}\n", scalar(v).unwrap_or_default()));
    }
    if let Some(r) = body.get("result") {
        out.push_str("result:\n");
        walk(r, 1, &mut out);
    }
    let n = body.get("certificates").and_then(Value::as_array).map_or(0, Vec::len);
    out.push_str(&format!("certificates: {n} (verified)\n"));
    out
}
