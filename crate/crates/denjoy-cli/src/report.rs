//! Structured reports.
//!
//! Every subcommand produces one `Report`: command echo, inputs, outputs
//! and precision certificates, all as JSON values with sorted keys. The
//! canonical byte form (pretty JSON, timing stripped) is deterministic
//! for fixed inputs and precision; the optional timing field is additive
//! metadata and never part of the canonical form.

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: &str = "denjoy-report/v1";

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub certificates: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn new(command: &str, inputs: Value, outputs: Value, certificates: Value) -> Self {
        Report {
            schema: SCHEMA.to_string(),
            command: command.to_string(),
            inputs,
            outputs,
            certificates,
            timing_ms: None,
        }
    }

    /// Canonical bytes: timing stripped, pretty JSON with sorted object
    /// keys (the default `serde_json` map is ordered), trailing newline.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut stripped = self.clone();
        stripped.timing_ms = None;
        let mut out = serde_json::to_vec_pretty(&stripped).expect("report serializes");
        out.push(b'\n');
        out
    }

    pub fn parse(bytes: &[u8]) -> Result<Report, denjoy_core::Error> {
        let report: Report = serde_json::from_slice(bytes)
            .map_err(|e| denjoy_core::Error::Invalid(format!("report: {e}")))?;
        if report.schema != SCHEMA {
            return Err(denjoy_core::Error::Invalid(format!(
                "report: unknown schema {:?}, expected {SCHEMA:?}",
                report.schema
            )));
        }
        Ok(report)
    }

    /// Human-readable table rendering.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("report   {}\n", self.schema));
        out.push_str(&format!("command  {}\n", self.command));
        render_section(&mut out, "inputs", &self.inputs, 0);
        render_section(&mut out, "outputs", &self.outputs, 0);
        render_section(&mut out, "certificates", &self.certificates, 0);
        if let Some(t) = self.timing_ms {
            out.push_str(&format!("timing   {t} ms\n"));
        }
        out
    }
}

fn render_section(out: &mut String, name: &str, value: &Value, depth: usize) {
    let indent = "  ".repeat(depth);
    match value {
        Value::Object(map) => {
            out.push_str(&format!("{indent}{name}:\n"));
            for (k, v) in map {
                render_section(out, k, v, depth + 1);
            }
        }
        Value::Array(items) => {
            if items.iter().all(|v| !v.is_object() && !v.is_array()) {
                let rendered: Vec<String> = items.iter().map(scalar_to_string).collect();
                out.push_str(&format!("{indent}{name}: [{}]\n", rendered.join(", ")));
            } else {
                out.push_str(&format!("{indent}{name}:\n"));
                for (i, v) in items.iter().enumerate() {
                    render_section(out, &format!("[{i}]"), v, depth + 1);
                }
            }
        }
        scalar => {
            out.push_str(&format!("{indent}{name}: {}\n", scalar_to_string(scalar)));
        }
    }
}

fn scalar_to_string(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn canonical_bytes_are_deterministic_and_strip_timing() {
        let mut a = Report::new(
            "classify",
            json!({"spec": "x"}),
            json!({"class": "Minimal"}),
            json!({"precision_bits": 128}),
        );
        let b = a.clone();
        a.timing_ms = Some(42);
        assert_eq!(a.canonical_bytes(), b.canonical_bytes());
        let reparsed = Report::parse(&a.canonical_bytes()).unwrap();
        assert_eq!(reparsed, b);
    }

    #[test]
    fn table_rendering_mentions_all_sections() {
        let r = Report::new(
            "rho",
            json!({"g": "(1,0)"}),
            json!({"value": "sqrt(2) - 1", "list": [1, 2, 3]}),
            json!({}),
        );
        let table = r.render_table();
        assert!(table.contains("command  rho"));
        assert!(table.contains("value: sqrt(2) - 1"));
        assert!(table.contains("list: [1, 2, 3]"));
    }
}
