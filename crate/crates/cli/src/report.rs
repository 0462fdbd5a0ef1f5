use serde_json::{Map, Value};

/// Ordered key/value report, printed either as `key value` lines or as a
/// single JSON object with the same keys.
#[derive(Default)]
pub struct Report {
    entries: Vec<(String, Value, Option<String>)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.entries.push((key.to_string(), value.into(), None));
        self
    }

    /// Like `put`, with a remark appended to the text form only.
    pub fn put_noted(&mut self, key: &str, value: impl Into<Value>, note: String) -> &mut Self {
        self.entries.push((key.to_string(), value.into(), Some(note)));
        self
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let map: Map<String, Value> = self
                .entries
                .iter()
                .map(|(k, v, _)| (k.clone(), v.clone()))
                .collect();
            let mut out = serde_json::to_string_pretty(&Value::Object(map)).expect("plain values");
            out.push('\n');
            return out;
        }
        let mut out = String::new();
        for (key, value, note) in &self.entries {
            match value {
                // arrays print one element per line under the same key
                Value::Array(items) => {
                    for item in items {
                        out.push_str(&format!("{key} {}\n", text(item)));
                    }
                }
                _ => {
                    out.push_str(&format!("{key} {}", text(value)));
                    if let Some(note) = note {
                        out.push_str(&format!(" ({note})"));
                    }
                    out.push('\n');
                }
            }
        }
        out
    }
}

fn text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| format!("{k}={}", text(v)))
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}
