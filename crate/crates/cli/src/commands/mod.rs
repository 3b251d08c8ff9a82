mod leaf;
mod pathint;
mod rep;
mod verify;

use std::fs;
use std::path::Path;

use qleaf_core::repq::{hilbert, HilbertMeta, Spin};
use serde_json::Value;

pub use leaf::leaf;
pub use pathint::pathint;
pub use rep::rep;
pub use verify::verify;

use crate::report::RunReport;
use crate::CliError;

pub(crate) fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub(crate) fn meta(spin: f64, hbar: f64) -> Result<HilbertMeta, CliError> {
    let s = Spin::new(spin).map_err(|e| usage(e.to_string()))?;
    hilbert(s, hbar).map_err(|e| usage(e.to_string()))
}

/// Payload goes to `out` if given, otherwise to stdout. With `out` set the
/// report (minus its data) is printed instead.
pub(crate) fn emit(report: &RunReport, payload: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            fs::write(path, payload)?;
            print_json(&report.without_data())
        }
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

pub(crate) fn print_json(v: &Value) -> Result<(), CliError> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

pub(crate) fn pretty(report: &RunReport) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(report)? + "\n")
}
