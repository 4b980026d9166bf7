//! The JSON report every command can emit.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub expected: Value,
    pub actual: Value,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: &str, inputs: Value) -> Self {
        Report {
            command: command.to_string(),
            inputs,
            results: Value::Null,
            checks: Vec::new(),
        }
    }

    pub fn check(
        &mut self,
        name: impl Into<String>,
        pass: bool,
        expected: impl Into<Value>,
        actual: impl Into<Value>,
    ) {
        self.checks.push(Check {
            name: name.into(),
            pass,
            expected: expected.into(),
            actual: actual.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
