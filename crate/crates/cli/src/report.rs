//! Run reports: inputs with hashes, structured results, assertions and
//! optional timings, rendered as JSON or as indented text.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Context;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize)]
pub struct InputFile {
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub phase: String,
    pub millis: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<InputFile>,
    pub flags: Map<String, Value>,
    pub results: Map<String, Value>,
    pub assertions: Vec<Assertion>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<Timing>>,
}

/// Collects everything a command produces.
pub struct Run {
    command: String,
    inputs: Vec<InputFile>,
    flags: Map<String, Value>,
    results: Map<String, Value>,
    assertions: Vec<Assertion>,
    timings: Vec<Timing>,
}

impl Run {
    pub fn new(command: &str) -> Run {
        Run {
            command: command.to_string(),
            inputs: Vec::new(),
            flags: Map::new(),
            results: Map::new(),
            assertions: Vec::new(),
            timings: Vec::new(),
        }
    }

    pub fn flag(&mut self, name: &str, value: impl Serialize) {
        self.flags.insert(name.to_string(), serde_json::to_value(value).expect("serializable"));
    }

    /// Reads and hashes an input file.
    pub fn read_bytes(&mut self, path: &Path) -> anyhow::Result<Vec<u8>> {
        let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        let digest = Sha256::digest(&bytes);
        self.inputs.push(InputFile { path: path.display().to_string(), sha256: format!("{digest:x}") });
        Ok(bytes)
    }

    pub fn read_json<T: DeserializeOwned>(&mut self, path: &Path) -> anyhow::Result<T> {
        let bytes = self.read_bytes(path)?;
        serde_json::from_slice(&bytes).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn put(&mut self, key: &str, value: impl Serialize) {
        self.results.insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.assertions.push(Assertion { name: name.into(), passed, detail: detail.into() });
    }

    pub fn time<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings.push(Timing { phase: phase.to_string(), millis: start.elapsed().as_secs_f64() * 1000.0 });
        out
    }

    pub fn finish(self, timings: bool) -> RunReport {
        let passed = self.assertions.iter().all(|a| a.passed);
        RunReport {
            command: self.command,
            inputs: self.inputs,
            flags: self.flags,
            results: self.results,
            assertions: self.assertions,
            passed,
            timings: timings.then_some(self.timings),
        }
    }
}

/// Resolves `name` against the directory of `base`.
pub fn sibling(base: &Path, name: &str) -> PathBuf {
    base.parent().map_or_else(|| PathBuf::from(name), |d| d.join(name))
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| matches!(x, Value::Number(_) | Value::String(_) | Value::Bool(_))) => {
            Some(format!("[{}]", a.iter().map(|x| scalar(x).expect("scalar")).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => writeln!(out, "{pad}{k}: {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}{k}:").unwrap();
                        render(out, x, indent + 2);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => writeln!(out, "{pad}- {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}-").unwrap();
                        render(out, x, indent + 2);
                    }
                }
            }
        }
        other => writeln!(out, "{pad}{}", scalar(other).expect("scalar")).unwrap(),
    }
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        for i in &self.inputs {
            writeln!(out, "input: {} sha256={}", i.path, i.sha256).unwrap();
        }
        if !self.flags.is_empty() {
            writeln!(out, "flags:").unwrap();
            render(&mut out, &Value::Object(self.flags.clone()), 2);
        }
        writeln!(out, "results:").unwrap();
        render(&mut out, &Value::Object(self.results.clone()), 2);
        writeln!(out, "assertions:").unwrap();
        for a in &self.assertions {
            let verdict = if a.passed { "PASS" } else { "FAIL" };
            if a.detail.is_empty() {
                writeln!(out, "  {verdict} {}", a.name).unwrap();
            } else {
                writeln!(out, "  {verdict} {} ({})", a.name, a.detail).unwrap();
            }
        }
        if let Some(t) = &self.timings {
            writeln!(out, "timings:").unwrap();
            for x in t {
                writeln!(out, "  {}: {:.1} ms", x.phase, x.millis).unwrap();
            }
        }
        writeln!(out, "verdict: {}", if self.passed { "PASS" } else { "FAIL" }).unwrap();
        out
    }
}
