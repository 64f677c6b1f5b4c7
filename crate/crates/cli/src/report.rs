use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub details: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, details: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass,
            details: details.into(),
        }
    }
}

/// Envelope written to stdout by every subcommand.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub checks: Vec<Check>,
    pub version: String,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value, outputs: Value) -> Self {
        RunReport {
            command: command.to_string(),
            inputs,
            outputs,
            checks: Vec::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn check(
        mut self,
        name: impl Into<String>,
        pass: bool,
        details: impl Into<String>,
    ) -> Self {
        self.checks.push(Check::new(name, pass, details));
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}
