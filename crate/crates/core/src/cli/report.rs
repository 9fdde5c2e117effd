use serde::Serialize;

use crate::numquad::MomentReport;

/// A named residual compared against a tolerance. Exact checks report the
/// number of mismatches with tolerance 0.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

impl CheckRecord {
    pub fn residual(name: impl Into<String>, residual: f64, tol: f64) -> Self {
        CheckRecord { name: name.into(), residual, tol, pass: residual <= tol }
    }

    pub fn exact(name: impl Into<String>, mismatches: usize) -> Self {
        CheckRecord { name: name.into(), residual: mismatches as f64, tol: 0.0, pass: mismatches == 0 }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Record {
    Moment(MomentReport),
    Check(CheckRecord),
}

impl Record {
    pub fn pass(&self) -> bool {
        match self {
            Record::Moment(m) => m.pass,
            Record::Check(c) => c.pass,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: serde_json::Value,
    pub records: Vec<Record>,
    pub pass: bool,
    pub wall_time_s: f64,
}

impl RunReport {
    pub fn new(command: &str, parameters: serde_json::Value, records: Vec<Record>, wall_time_s: f64) -> Self {
        let pass = records.iter().all(Record::pass);
        RunReport { command: command.to_string(), parameters, records, pass, wall_time_s }
    }
}
