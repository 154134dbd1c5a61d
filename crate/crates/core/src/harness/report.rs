//! Verification reports and their JSON and text renderings.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Mode;

pub const MAXWELL_TIME_FACTOR: &str = "exp(-j omega t)";
pub const DIRAC_TIME_FACTOR: &str = "exp(+j E t / hbar)";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckRecord {
    pub name: String,
    /// The identity being checked, written out as a formula.
    pub anchor: String,
    pub status: Status,
    /// `null` when the check could not be evaluated.
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Conventions {
    pub maxwell_time_factor: String,
    pub dirac_time_factor: String,
    /// Measured sign `s` in `γμγν + γνγμ = 2s·η`, when the Dirac suite ran.
    pub clifford_sign: Option<i64>,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions {
            maxwell_time_factor: MAXWELL_TIME_FACTOR.into(),
            dirac_time_factor: DIRAC_TIME_FACTOR.into(),
            clifford_sign: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationReport {
    pub mode: Mode,
    pub conventions: Conventions,
    pub checks: Vec<CheckRecord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(Error::Config(format!("unknown report format `{other}`"))),
        }
    }
}

impl VerificationReport {
    pub fn new(mode: Mode) -> Self {
        VerificationReport {
            mode,
            conventions: Conventions::default(),
            checks: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn find(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// One line per check.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            let residual = c
                .residual
                .map_or_else(|| "n/a".to_string(), |r| format!("{r:.3e}"));
            out.push_str(&format!(
                "{status} {}  residual={residual} tol={:.1e} mode={}  [{}]",
                c.name, c.tolerance, c.mode, c.anchor
            ));
            if let Some(d) = &c.detail {
                out.push_str(&format!("  ({d})"));
            }
            out.push('\n');
        }
        out
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_pass() -> VerificationReport {
        let mut r = VerificationReport::new(Mode::Exact);
        r.checks.push(CheckRecord {
            name: "D*D = -Laplacian".into(),
            anchor: "D^2 = -(d1^2 + d2^2 + d3^2)".into(),
            status: Status::Pass,
            residual: Some(0.0),
            tolerance: 0.0,
            mode: Mode::Exact,
            detail: None,
        });
        r
    }

    #[test]
    fn json_shape() {
        let r = one_pass();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let checks = v["checks"].as_array().unwrap();
        assert_eq!(checks.len(), 1);
        assert_eq!(checks[0]["status"], "pass");
        assert_eq!(v["conventions"]["maxwell_time_factor"], MAXWELL_TIME_FACTOR);
        assert!(checks[0].get("detail").is_none());
    }

    #[test]
    fn text_is_one_line_per_check() {
        let text = one_pass().to_text();
        assert_eq!(text.lines().count(), 1);
        assert!(text.contains("D*D = -Laplacian") && text.contains("residual=0.000e0"));
    }

    #[test]
    fn json_round_trip() {
        let mut r = one_pass();
        r.conventions.clifford_sign = Some(1);
        r.checks.push(CheckRecord {
            name: "odd".into(),
            anchor: "x".into(),
            status: Status::Fail,
            residual: None,
            tolerance: 1e-12,
            mode: Mode::Float,
            detail: Some("why".into()),
        });
        r.checks[0].residual = Some(0.1 + 0.2);
        assert_eq!(VerificationReport::from_json(&r.to_json()).unwrap(), r);
        assert!(!r.passed());
    }
}
