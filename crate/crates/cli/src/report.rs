use std::time::Instant;

use qleaf_core::numkit::{Complex, DenseMatrix};
use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            residual,
            tolerance,
            // NaN never passes
            pass: residual <= tolerance,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: &'static str,
    pub params: Value,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Map::is_empty")]
    pub data: Map<String, Value>,
    pub wall_ms: Option<f64>,
}

impl RunReport {
    pub fn new(command: &'static str, params: impl Serialize) -> Self {
        Self {
            command,
            params: serde_json::to_value(params).expect("flags serialize"),
            checks: Vec::new(),
            data: Map::new(),
            wall_ms: None,
        }
    }

    pub fn check(&mut self, name: impl Into<String>, residual: f64, tolerance: f64) {
        let c = Check::new(name, residual, tolerance);
        log::info!("{} residual {:.3e} tol {:.1e} {}", c.name, c.residual, c.tolerance, if c.pass { "ok" } else { "FAIL" });
        self.checks.push(c);
    }

    pub fn put(&mut self, key: &str, v: Value) {
        self.data.insert(key.to_owned(), v);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Sort checks by name and stamp the elapsed time unless timing is off.
    pub fn finish(&mut self, start: Instant, timing: bool) {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
        self.wall_ms = timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    }

    pub fn without_data(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().unwrap().remove("data");
        v
    }
}

pub fn complex(z: Complex) -> Value {
    json!({ "re": z.re, "im": z.im })
}

pub fn matrix(m: &DenseMatrix) -> Value {
    let entries: Vec<Vec<Value>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| complex(m.get(i, j))).collect())
        .collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": entries })
}
