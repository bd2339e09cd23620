use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Value,
}

/// Named pass/fail checks about one subject.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub omega: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(omega: impl Into<String>) -> Self {
        Self { omega: omega.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, name: &str, pass: bool, witness: Value) {
        self.checks.push(Check { name: name.to_string(), pass, witness });
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report json")
    }
}
