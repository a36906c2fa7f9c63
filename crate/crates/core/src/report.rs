//! Command output: one JSON document per invocation, plus a line-per-field
//! text rendering of the same document.

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub bounds: Value,
    pub results: Value,
    /// Where each result comes from: fixture expectations checked, bounds a
    /// verdict depends on, and similar notes.
    pub provenance: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            inputs: Value::Object(Map::new()),
            bounds: Value::Object(Map::new()),
            results: Value::Object(Map::new()),
            provenance: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        insert(&mut self.inputs, key, value);
        self
    }

    pub fn bound(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        insert(&mut self.bounds, key, value);
        self
    }

    pub fn result(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        insert(&mut self.results, key, value);
        self
    }

    pub fn note(&mut self, line: impl Into<String>) -> &mut Self {
        self.provenance.push(line.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        for (section, value) in [
            ("inputs", &self.inputs),
            ("bounds", &self.bounds),
            ("results", &self.results),
        ] {
            flatten(section, value, &mut out);
        }
        for line in &self.provenance {
            out.push_str(&format!("provenance: {line}\n"));
        }
        out
    }
}

fn insert(target: &mut Value, key: &str, value: impl Serialize) {
    let value = serde_json::to_value(value).expect("report field serializes");
    if let Value::Object(map) = target {
        map.insert(key.to_string(), value);
    }
}

fn flatten(prefix: &str, value: &Value, out: &mut String) {
    match value {
        Value::Object(map) if !map.is_empty() => {
            for (k, v) in map {
                flatten(&format!("{prefix}.{k}"), v, out);
            }
        }
        Value::Array(items) if items.iter().any(Value::is_object) => {
            for (k, v) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{k}]"), v, out);
            }
        }
        Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
        other => out.push_str(&format!("{prefix}: {other}\n")),
    }
}
