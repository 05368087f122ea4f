//! JSON reports. Every number is written as a decimal string so that exact
//! rationals and large dimensions survive any JSON reader.

use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::exactla::{Matrix, Scalar, Subspace};
use crate::repmod::Representation;

pub const SCHEMA: &str = "ppcat_report_v1";

/// A report under construction; keys are emitted in sorted order.
#[derive(Debug, Clone)]
pub struct Report {
    operation: String,
    seed: u64,
    inputs: Map<String, Value>,
    result: Map<String, Value>,
}

impl Report {
    pub fn new(operation: &str, seed: u64) -> Report {
        Report { operation: operation.into(), seed, inputs: Map::new(), result: Map::new() }
    }

    pub fn input(&mut self, key: &str, value: impl Into<String>) -> &mut Self {
        self.inputs.insert(key.into(), Value::String(value.into()));
        self
    }

    pub fn set(&mut self, key: &str, value: Value) -> &mut Self {
        self.result.insert(key.into(), value);
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.result.get(key)
    }

    pub fn to_value(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "operation": self.operation,
            "seed": self.seed.to_string(),
            "inputs": self.inputs,
            "result": self.result,
        })
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// Report for a failed invocation.
pub fn error_report(operation: &str, seed: u64, e: &Error) -> String {
    let v = json!({
        "schema": SCHEMA,
        "operation": operation,
        "seed": seed.to_string(),
        "error": { "kind": e.kind(), "message": e.to_string(), "precondition": e.is_precondition() },
    });
    let mut s = serde_json::to_string_pretty(&v).expect("reports serialize");
    s.push('\n');
    s
}

pub fn num(n: usize) -> Value {
    Value::String(n.to_string())
}

pub fn scalar(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

pub fn vector(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector(m.row(i))).collect())
}

/// A subspace as its list of basis vectors.
pub fn subspace(s: &Subspace) -> Value {
    Value::Array(s.basis_vectors().iter().map(|v| vector(v)).collect())
}

pub fn representation(m: &Representation) -> Value {
    let q = m.algebra().quiver();
    let dims: Map<String, Value> =
        q.vertices().iter().enumerate().map(|(v, name)| (name.clone(), num(m.dim(v)))).collect();
    let maps: Map<String, Value> =
        q.arrows().iter().enumerate().map(|(a, arrow)| (arrow.name.clone(), matrix(m.map(a)))).collect();
    json!({ "algebra": m.algebra().name(), "dims": dims, "maps": maps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;

    #[test]
    fn numbers_are_strings() {
        let mut r = Report::new("eval", 7);
        r.input("formula", "phi").set("dim", num(3));
        let f = Field::Rationals;
        r.set("m", matrix(&Matrix::from_i64_rows(f, &[&[1, -2]])));
        let v: Value = serde_json::from_str(&r.render()).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["seed"], "7");
        assert_eq!(v["result"]["dim"], "3");
        assert_eq!(v["result"]["m"][0][1], "-2");
    }

    #[test]
    fn errors_carry_kind() {
        let v: Value = serde_json::from_str(&error_report("eval", 0, &Error::NotMono)).unwrap();
        assert_eq!(v["error"]["kind"], "NotMono");
        assert_eq!(v["error"]["precondition"], true);
    }
}
