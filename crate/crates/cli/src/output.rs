//! Ordered key/value reports rendered as `key: value` lines or one JSON object.

use crate::Format;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Default)]
pub struct Report {
    fields: Vec<(String, Value)>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        let value = serde_json::to_value(value).expect("report values serialize");
        self.fields.push((key.to_string(), value));
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let map: Map<String, Value> = self.fields.iter().cloned().collect();
                let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("valid JSON");
                s.push('\n');
                s
            }
            Format::Text => self
                .fields
                .iter()
                .map(|(k, v)| format!("{k}: {}\n", text_value(v)))
                .collect(),
        }
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        Value::Array(items) if items.iter().any(Value::is_array) => {
            items.iter().map(text_value).collect::<Vec<_>>().join(" | ")
        }
        Value::Array(items) => items.iter().map(text_value).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}
