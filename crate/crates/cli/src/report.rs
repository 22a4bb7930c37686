use std::time::Instant;

use serde_json::{json, Value};

/// One expected-versus-observed comparison.
#[derive(Debug, Clone)]
pub struct Check {
    pub criterion: u8,
    pub name: String,
    /// Enough to rerun the computation: catalog names and parameters, or full matroid JSON.
    pub input: Value,
    pub expected: Value,
    pub observed: Value,
    pub pass: bool,
}

impl Check {
    pub fn new(
        criterion: u8,
        name: impl Into<String>,
        input: Value,
        expected: Value,
        observed: Value,
    ) -> Check {
        let pass = expected == observed;
        Check {
            criterion,
            name: name.into(),
            input,
            expected,
            observed,
            pass,
        }
    }

    /// A check whose verdict is not a plain equality of the two values.
    pub fn judged(
        criterion: u8,
        name: impl Into<String>,
        input: Value,
        expected: Value,
        observed: Value,
        pass: bool,
    ) -> Check {
        Check {
            criterion,
            name: name.into(),
            input,
            expected,
            observed,
            pass,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "criterion": self.criterion,
            "name": self.name,
            "input": self.input,
            "expected": self.expected,
            "observed": self.observed,
            "pass": self.pass,
        })
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub id: String,
    pub instances: usize,
    pub checks: Vec<Check>,
    pub elapsed_ms: u128,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn for_criterion(&self, criterion: u8) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(move |c| c.criterion == criterion)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "instances": self.instances,
            "pass": self.pass(),
            "elapsed_ms": self.elapsed_ms as u64,
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Collects checks and counts instances while a suite runs.
pub struct Recorder {
    id: String,
    start: Instant,
    instances: usize,
    checks: Vec<Check>,
}

impl Recorder {
    pub fn new(id: impl Into<String>) -> Recorder {
        Recorder {
            id: id.into(),
            start: Instant::now(),
            instances: 0,
            checks: Vec::new(),
        }
    }

    pub fn instances(&mut self, k: usize) {
        self.instances += k;
    }

    pub fn push(&mut self, check: Check) {
        self.instances += 1;
        self.checks.push(check);
    }

    /// Records a failed check for a computation that returned an error.
    pub fn error(
        &mut self,
        criterion: u8,
        name: impl Into<String>,
        input: Value,
        err: impl ToString,
    ) {
        self.push(Check::judged(
            criterion,
            name,
            input,
            Value::Null,
            json!({ "error": err.to_string() }),
            false,
        ));
    }

    pub fn finish(self) -> VerificationReport {
        VerificationReport {
            id: self.id,
            instances: self.instances,
            checks: self.checks,
            elapsed_ms: self.start.elapsed().as_millis(),
        }
    }
}
