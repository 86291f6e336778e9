use std::time::Instant;

use homlie::algebra::HomAlgebra;
use homlie::cohomology::Cochain;
use homlie::{Error, Matrix, Scalar};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Structured output of one command. Keys serialize in sorted order.
pub struct Report {
    command: Vec<String>,
    inputs: Map<String, Value>,
    pub verdicts: Map<String, Value>,
    pub findings: Vec<Value>,
    error: Option<String>,
    started: Instant,
    timing: bool,
}

impl Report {
    pub fn new(command: Vec<String>, timing: bool) -> Report {
        Report {
            command,
            inputs: Map::new(),
            verdicts: Map::new(),
            findings: Vec::new(),
            error: None,
            started: Instant::now(),
            timing,
        }
    }

    pub fn input(&mut self, name: &str, bytes: &[u8]) {
        self.inputs.insert(name.to_string(), Value::String(hex::encode(Sha256::digest(bytes))));
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.verdicts.insert(key.to_string(), value.into());
    }

    pub fn finding(&mut self, kind: &str, detail: Value) {
        self.findings.push(json!({ "kind": kind, "detail": detail }));
    }

    pub fn fail(&mut self, e: &Error) -> i32 {
        self.error = Some(e.to_string());
        exit_code(e)
    }

    pub fn render(&self, exit: i32) -> String {
        let mut top = Map::new();
        top.insert("command".into(), json!(self.command));
        top.insert("exit_code".into(), json!(exit));
        top.insert("findings".into(), Value::Array(self.findings.clone()));
        top.insert("inputs".into(), Value::Object(self.inputs.clone()));
        top.insert("verdicts".into(), Value::Object(self.verdicts.clone()));
        if let Some(e) = &self.error {
            top.insert("error".into(), json!(e));
        }
        if self.timing {
            top.insert("timing_ms".into(), json!(self.started.elapsed().as_millis() as u64));
        }
        serde_json::to_string_pretty(&Value::Object(top)).expect("report values are serializable")
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Input(_) | Error::Dimension(_) | Error::FieldMismatch(..) | Error::Unsupported(_) => EXIT_INPUT,
        Error::Precondition(_) | Error::NotInvertible { .. } | Error::Budget(_) => EXIT_NEGATIVE,
        Error::Invariant(_) => EXIT_INTERNAL,
    }
}

pub fn scalar(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

pub fn vector(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array(m.row_vectors().iter().map(|r| vector(r)).collect())
}

pub fn cochain(c: &Cochain) -> Value {
    Value::Array(c.support().into_iter().map(|(args, v)| json!({ "args": args, "value": vector(&v) })).collect())
}

pub fn axioms(g: &HomAlgebra) -> Value {
    json!({
        "hom_jacobi": g.check_hom_jacobi(),
        "multiplicative": g.check_multiplicative(),
        "lie": g.is_lie(),
    })
}
