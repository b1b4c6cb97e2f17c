//! Versioned reports: a config echo plus a list of named checks, each either a
//! required invariant of this crate's construction or a finding about a formula
//! as written.

mod suites;

pub use suites::{
    duality_findings, euler_findings, kepler_algebra_findings, kepler_operator_findings, oscillator_algebra_findings,
    oscillator_operator_findings, oscillator_oracle_findings, ycm_operator_findings, EulerSample,
};

use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write;

pub const SCHEMA: &str = "quadalg/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Informational; never affects the exit code.
    Finding,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Finding {
    pub name: String,
    pub claim: String,
    pub status: Status,
    /// Whether the residual is below the tolerance.
    pub holds: bool,
    pub residual: Option<f64>,
    pub tolerance: Option<f64>,
    pub values: BTreeMap<String, f64>,
    pub note: Option<String>,
}

impl Finding {
    fn build(name: impl Into<String>, claim: impl Into<String>, required: bool, residual: f64, tolerance: f64) -> Self {
        // NaN never holds
        let holds = residual < tolerance;
        let status = match (required, holds) {
            (false, _) => Status::Finding,
            (true, true) => Status::Pass,
            (true, false) => Status::Fail,
        };
        Self {
            name: name.into(),
            claim: claim.into(),
            status,
            holds,
            residual: Some(residual),
            tolerance: Some(tolerance),
            values: BTreeMap::new(),
            note: None,
        }
    }

    pub fn required(name: impl Into<String>, claim: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self::build(name, claim, true, residual, tolerance)
    }

    pub fn finding(name: impl Into<String>, claim: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self::build(name, claim, false, residual, tolerance)
    }

    /// A required check that could not be run at all.
    pub fn error(name: impl Into<String>, claim: impl Into<String>, err: impl ToString) -> Self {
        let mut f = Self::build(name, claim, true, f64::NAN, 0.0);
        f.residual = None;
        f.note = Some(err.to_string());
        f
    }

    pub fn with(mut self, key: impl Into<String>, value: f64) -> Self {
        self.values.insert(key.into(), value);
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: serde_json::Value,
    pub findings: Vec<Finding>,
    pub spectrum: Vec<crate::catalog::SpectrumRecord>,
}

impl Report {
    pub fn new(command: impl Into<String>, config: &impl Serialize) -> Self {
        Self {
            schema: SCHEMA,
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            config: serde_json::to_value(config).unwrap_or(serde_json::Value::Null),
            findings: Vec::new(),
            spectrum: Vec::new(),
        }
    }

    pub fn extend(&mut self, findings: impl IntoIterator<Item = Finding>) {
        self.findings.extend(findings);
    }

    /// Sorts findings by name (stable, so equal names keep insertion order).
    pub fn finish(mut self) -> Self {
        self.findings.sort_by(|a, b| a.name.cmp(&b.name));
        self
    }

    pub fn failed(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| f.status == Status::Fail)
    }

    /// 0 if every required check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.failed().next().is_some() {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {} ({})", self.command, self.version, self.schema);
        if !self.spectrum.is_empty() {
            let _ = writeln!(out, "{:<10} {:<14} {:<12} {:>22}  flags", "system", "quantum", "provenance", "energy");
            for r in &self.spectrum {
                let q = match r.quantum {
                    crate::catalog::QuantumNumbers::Representation { p } => format!("p={p}"),
                    crate::catalog::QuantumNumbers::Parabolic { n1, n2 } => format!("n1={n1},n2={n2}"),
                };
                let sys = serde_json::to_value(r.system).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
                let prov = serde_json::to_value(r.provenance).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
                let _ = writeln!(out, "{sys:<10} {q:<14} {prov:<12} {:>22.15e}  {}", r.energy, r.flags.join("; "));
            }
        }
        for f in &self.findings {
            let status = match f.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Finding if f.holds => "finding (holds)",
                Status::Finding => "finding (fails)",
            };
            let res = f.residual.map(|r| format!("{r:.3e}")).unwrap_or_else(|| "-".into());
            let _ = writeln!(out, "{status:<16} {res:>10}  {}", f.name);
            if let Some(n) = &f.note {
                let _ = writeln!(out, "{:<28}{n}", "");
            }
        }
        let failed = self.failed().count();
        let _ = writeln!(out, "{} checks, {failed} required failures", self.findings.len());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_and_exit_code() {
        let mut r = Report::new("t", &());
        r.extend([Finding::finding("b", "x", 1.0, 1e-9), Finding::required("a", "y", 1e-15, 1e-12)]);
        assert_eq!(r.exit_code(), 0);
        r.extend([Finding::required("c", "z", f64::NAN, 1.0)]);
        let r = r.finish();
        assert_eq!(r.exit_code(), 1);
        assert_eq!(r.findings[0].name, "a");
        assert_eq!(r.findings[1].status, Status::Finding);
        assert!(r.to_json().contains("\"schema\": \"quadalg/1\""));
    }
}
