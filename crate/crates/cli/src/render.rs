use serde_json::Value;

use crate::args::Format;

pub fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("serializable") + "\n",
        Format::Text => {
            let mut lines = Vec::new();
            flatten(value, "", &mut lines);
            lines.iter().map(|l| format!("{l}\n")).collect()
        }
    }
}

/// One `path: value` line per leaf, with dotted object keys and numeric
/// array indices.
fn flatten(value: &Value, path: &str, out: &mut Vec<String>) {
    let join = |key: &str| {
        if path.is_empty() {
            key.to_string()
        } else {
            format!("{path}.{key}")
        }
    };
    match value {
        Value::Object(map) if !map.is_empty() => {
            for (k, v) in map {
                flatten(v, &join(k), out);
            }
        }
        Value::Array(items) if !items.is_empty() => {
            for (i, v) in items.iter().enumerate() {
                flatten(v, &join(&i.to_string()), out);
            }
        }
        Value::String(s) => out.push(format!("{path}: {s}")),
        other => out.push(format!("{path}: {other}")),
    }
}
