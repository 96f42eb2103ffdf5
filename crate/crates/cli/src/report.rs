use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use hochlab::io::LoadedFile;
use hochlab::Field;

use crate::args::OutputFormat;

#[derive(Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

pub fn digests(files: &[LoadedFile]) -> Vec<InputDigest> {
    files
        .iter()
        .map(|f| InputDigest { path: f.path.clone(), sha256: hex::encode(Sha256::digest(f.contents.as_bytes())) })
        .collect()
}

/// A verb's outcome before formatting.
#[derive(Debug)]
pub struct Body {
    pub result: Value,
    pub lines: Vec<String>,
    pub status: u8,
}

impl Body {
    pub fn ok(result: Value, lines: Vec<String>) -> Body {
        Body { result, lines, status: 0 }
    }
}

pub struct Rendered {
    pub text: String,
    pub status: u8,
}

pub struct Report {
    pub verb: &'static str,
    pub field: Field,
    pub inputs: Vec<InputDigest>,
    pub parameters: Map<String, Value>,
    pub body: Body,
}

impl Report {
    pub fn render(self, format: OutputFormat) -> Rendered {
        let status = self.body.status;
        let text = match format {
            OutputFormat::Json => {
                let doc = json!({
                    "tool": "hochlab",
                    "version": env!("CARGO_PKG_VERSION"),
                    "verb": self.verb,
                    "field": self.field,
                    "inputs": self.inputs,
                    "parameters": self.parameters,
                    "status": status,
                    "result": self.body.result,
                });
                let mut s = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
                s.push('\n');
                s
            }
            OutputFormat::Text => {
                let mut out = format!("hochlab {} over {}\n", self.verb, self.field);
                for input in &self.inputs {
                    out.push_str(&format!("input {} sha256:{}\n", input.path, input.sha256));
                }
                for (k, v) in &self.parameters {
                    out.push_str(&format!("{k} = {}\n", plain(v)));
                }
                for line in &self.body.lines {
                    out.push_str(line);
                    out.push('\n');
                }
                out
            }
        };
        Rendered { text, status }
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digests_are_hex_sha256() {
        let files = [LoadedFile { path: "a".into(), contents: "abc".into() }];
        let d = digests(&files);
        assert_eq!(d[0].sha256, "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }

    #[test]
    fn json_rendering_is_stable() {
        let make = || Report {
            verb: "center",
            field: Field::Rational,
            inputs: vec![],
            parameters: Map::new(),
            body: Body::ok(json!({"b": 1, "a": [1, 2]}), vec![]),
        };
        let first = make().render(OutputFormat::Json).text;
        assert_eq!(first, make().render(OutputFormat::Json).text);
        assert!(first.contains("\"field\": {\n    \"kind\": \"rational\"\n  }"));
    }
}
