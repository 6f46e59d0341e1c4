//! Result documents: a disclosure header followed by a CSV table or a JSON body.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::args::Format;
use crate::Failure;

pub enum Body {
    Csv(String),
    Json(Value),
}

pub struct Report {
    pub body: Body,
    /// truncations and tolerances, in the order they should be printed
    pub disclosures: Vec<(String, String)>,
}

impl Report {
    pub fn csv(body: String) -> Self {
        Self { body: Body::Csv(body), disclosures: Vec::new() }
    }

    pub fn json(body: Value) -> Self {
        Self { body: Body::Json(body), disclosures: Vec::new() }
    }

    pub fn disclose(mut self, key: &str, value: impl ToString) -> Self {
        self.disclosures.push((key.to_string(), value.to_string()));
        self
    }
}

pub fn config_hash(config: &Value) -> String {
    let digest = Sha256::digest(config.to_string().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn csv_to_json(text: &str) -> Value {
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap_or("").split(',').collect();
    let rows: Vec<Value> = lines
        .filter(|l| !l.is_empty())
        .map(|l| {
            let mut row = Map::new();
            for (k, v) in header.iter().zip(l.split(',')) {
                let cell = match v.parse::<f64>() {
                    Ok(x) if x.is_finite() => json!(x),
                    _ => json!(v),
                };
                row.insert(k.to_string(), cell);
            }
            Value::Object(row)
        })
        .collect();
    Value::Array(rows)
}

/// Renders the final document and writes it to the directory or stdout.
pub fn emit(
    command: &str,
    config: &Value,
    report: Report,
    format: Option<Format>,
    out_dir: Option<&Path>,
) -> Result<(), Failure> {
    let hash = config_hash(config);
    let version = env!("CARGO_PKG_VERSION");
    let format = format.unwrap_or(match report.body {
        Body::Csv(_) => Format::Csv,
        Body::Json(_) => Format::Json,
    });
    let text = match (report.body, format) {
        (Body::Csv(table), Format::Csv) => {
            let mut out = format!("# zetalab {version}\n# command: {command}\n# config-sha256: {hash}\n");
            for (k, v) in &report.disclosures {
                out.push_str(&format!("# {k}: {v}\n"));
            }
            out.push_str(&table);
            out
        }
        (body, Format::Json) => {
            let result = match body {
                Body::Csv(table) => csv_to_json(&table),
                Body::Json(v) => v,
            };
            let disclosures: Map<String, Value> =
                report.disclosures.into_iter().map(|(k, v)| (k, Value::String(v))).collect();
            let doc = json!({
                "meta": {
                    "tool": "zetalab",
                    "version": version,
                    "command": command,
                    "config_sha256": hash,
                    "config": config,
                    "disclosures": disclosures,
                },
                "result": result,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("document serializes");
            s.push('\n');
            s
        }
        (Body::Json(_), Format::Csv) => {
            return Err(Failure::validation(
                "InvalidParameter",
                format!("`{command}` produces a structured report; use --format json"),
            ))
        }
    };
    match out_dir {
        Some(dir) => {
            let ext = match format {
                Format::Csv => "csv",
                Format::Json => "json",
            };
            fs::create_dir_all(dir).map_err(Failure::io)?;
            fs::write(dir.join(format!("{command}.{ext}")), text).map_err(Failure::io)?;
        }
        None => {
            std::io::stdout().write_all(text.as_bytes()).map_err(Failure::io)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_rows_become_objects() {
        let v = csv_to_json("x,label\n1.5,a\n2,b\n");
        assert_eq!(v, json!([{"x": 1.5, "label": "a"}, {"x": 2.0, "label": "b"}]));
    }

    #[test]
    fn hash_depends_on_config() {
        let a = config_hash(&json!({"command": "zeros", "tmax": 100.0}));
        let b = config_hash(&json!({"command": "zeros", "tmax": 101.0}));
        assert_eq!(a.len(), 64);
        assert_ne!(a, b);
    }
}
