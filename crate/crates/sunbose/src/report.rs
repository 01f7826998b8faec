//! Command reports: named checks plus numeric evidence.

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::config::RunConfig;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub measured: Value,
    /// `"<"`, `"<="` or `"=="`.
    pub relation: &'static str,
    pub bound: Value,
    /// Name accepted by `--tol`, when the bound is tunable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<String>,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub config: RunConfig,
    pub checks: Vec<Check>,
    pub evidence: Map<String, Value>,
    pub wall_time_seconds: f64,
}

impl Report {
    pub fn new(command: &'static str, config: &RunConfig) -> Self {
        Self { command, config: config.clone(), checks: Vec::new(), evidence: Map::new(), wall_time_seconds: 0.0 }
    }

    /// `measured < bound`, bound taken from the named tolerance.
    pub fn below(&mut self, name: &str, measured: f64, tolerance: &str, default: f64) {
        let bound = self.config.tol(tolerance, default);
        self.checks.push(Check {
            name: name.to_string(),
            pass: measured < bound,
            measured: json!(measured),
            relation: "<",
            bound: json!(bound),
            tolerance: Some(tolerance.to_string()),
        });
    }

    /// `measured <= bound` with a fixed bound (exact checks use 0).
    pub fn at_most(&mut self, name: &str, measured: f64, bound: f64) {
        self.checks.push(Check {
            name: name.to_string(),
            pass: measured <= bound,
            measured: json!(measured),
            relation: "<=",
            bound: json!(bound),
            tolerance: None,
        });
    }

    pub fn equal<T: Serialize + PartialEq>(&mut self, name: &str, measured: T, expected: T) {
        self.checks.push(Check {
            name: name.to_string(),
            pass: measured == expected,
            measured: json!(measured),
            relation: "==",
            bound: json!(expected),
            tolerance: None,
        });
    }

    pub fn evidence(&mut self, key: &str, value: impl Serialize) {
        self.evidence.insert(key.to_string(), json!(value));
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass() {
            0
        } else {
            1
        }
    }

    /// Full JSON. With `with_wall_time` false every timing field
    /// (`wallTimeSeconds`, `wallTime`) is left out, so the output depends
    /// only on command and config.
    pub fn to_json(&self, with_wall_time: bool) -> Value {
        let mut v = json!({
            "schemaVersion": SCHEMA_VERSION,
            "command": self.command,
            "config": self.config,
            "pass": self.pass(),
            "checks": self.checks,
            "evidence": self.evidence,
        });
        if with_wall_time {
            v["wallTimeSeconds"] = json!(self.wall_time_seconds);
        } else {
            strip_timing(&mut v);
        }
        v
    }

    pub fn to_json_string(&self, with_wall_time: bool) -> String {
        serde_json::to_string_pretty(&self.to_json(with_wall_time)).expect("report values serialize")
    }
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("wallTime");
            map.remove("wallTimeSeconds");
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}
