//! Scenario configuration read from JSON.
//!
//! Complex values may be written as `[re, im]`, a bare number, or a literal
//! string such as `"3-1/2j"`. Numbers go through their decimal text, so `0.1`
//! is the rational `1/10` in exact mode.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::dirac::DiracParams;
use crate::error::{Error, Result};
use crate::field::{AnalyticField, PlaneWaveTerm};
use crate::grid::GridSpec;
use crate::harness::expr::ComplexLit;
use crate::literal::parse_complex_parts;
use crate::maxwell::MediumParams;
use crate::scalar::{Mode, Scalar};

pub const DEFAULT_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_SEED: u64 = 20_240_601;

/// Shipped default scenario.
pub const DEFAULT_CONFIG: &str = include_str!("../../../../configs/default.json");

/// A complex number from JSON, kept exact until a mode is chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexValue(pub ComplexLit);

impl ComplexValue {
    pub fn real(n: i64) -> Self {
        ComplexValue(ComplexLit::new(
            BigRational::from_integer(BigInt::from(n)),
            BigRational::zero(),
        ))
    }

    pub fn get<S: Scalar>(&self) -> S {
        self.0.to_scalar()
    }
}

/// Parses decimal text with an optional exponent into an exact rational.
fn rational_from_number_text(text: &str) -> Option<BigRational> {
    let (mantissa, exp) = match text.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (re, im) = parse_complex_parts(mantissa).ok()?;
    if !im.is_zero() {
        return None;
    }
    let ten = BigRational::from_integer(BigInt::from(10));
    let scale = num_traits::pow(ten, exp.unsigned_abs() as usize);
    Some(if exp < 0 { re / scale } else { re * scale })
}

fn real_part(v: &Value) -> std::result::Result<BigRational, String> {
    match v {
        Value::Number(n) => rational_from_number_text(&n.to_string())
            .ok_or_else(|| format!("cannot read number {n}")),
        Value::String(s) => {
            let (re, im) = parse_complex_parts(s).map_err(|e| e.to_string())?;
            if im.is_zero() {
                Ok(re)
            } else {
                Err(format!("expected a real part, got `{s}`"))
            }
        }
        other => Err(format!("expected a number, got {other}")),
    }
}

impl TryFrom<&Value> for ComplexValue {
    type Error = String;

    fn try_from(v: &Value) -> std::result::Result<Self, String> {
        match v {
            Value::Array(parts) if parts.len() == 2 => Ok(ComplexValue(ComplexLit::new(
                real_part(&parts[0])?,
                real_part(&parts[1])?,
            ))),
            Value::String(s) => {
                let (re, im) = parse_complex_parts(s).map_err(|e| e.to_string())?;
                Ok(ComplexValue(ComplexLit::new(re, im)))
            }
            Value::Number(_) => Ok(ComplexValue(ComplexLit::new(
                real_part(v)?,
                BigRational::zero(),
            ))),
            other => Err(format!(
                "expected a complex value ([re, im], number or string), got {other}"
            )),
        }
    }
}

impl<'de> Deserialize<'de> for ComplexValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        ComplexValue::try_from(&v).map_err(D::Error::custom)
    }
}

impl Serialize for ComplexValue {
    fn serialize<Z: Serializer>(&self, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
        let z: num_complex::Complex64 = self.get();
        [z.re, z.im].serialize(s)
    }
}

fn one() -> ComplexValue {
    ComplexValue::real(1)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MediumConfig {
    #[serde(default = "one")]
    pub eps0: ComplexValue,
    #[serde(default = "one")]
    pub mu0: ComplexValue,
    #[serde(default = "one")]
    pub eps_r: ComplexValue,
    #[serde(default = "one")]
    pub mu_r: ComplexValue,
    pub omega: ComplexValue,
    #[serde(default = "one")]
    pub c: ComplexValue,
}

impl MediumConfig {
    pub fn params<S: Scalar>(&self) -> Result<MediumParams<S>> {
        MediumParams::new(
            self.eps0.get(),
            self.mu0.get(),
            self.eps_r.get(),
            self.mu_r.get(),
            self.omega.get(),
            self.c.get(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiracConfig {
    pub energy: ComplexValue,
    pub mass: ComplexValue,
    #[serde(default = "one")]
    pub hbar: ComplexValue,
    #[serde(default = "one")]
    pub c: ComplexValue,
}

impl DiracConfig {
    pub fn params<S: Scalar>(&self) -> Result<DiracParams<S>> {
        DiracParams::new(
            self.energy.get(),
            self.mass.get(),
            self.hbar.get(),
            self.c.get(),
        )
    }
}

/// One plane-wave term `amp · exp(j<k, x>)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermConfig {
    pub amp: [ComplexValue; 4],
    pub k: [ComplexValue; 3],
}

pub fn field_from_terms<S: Scalar>(terms: &[TermConfig]) -> AnalyticField<S> {
    AnalyticField::from_terms(
        terms
            .iter()
            .map(|t| {
                PlaneWaveTerm::new(
                    t.amp.each_ref().map(ComplexValue::get),
                    t.k.each_ref().map(ComplexValue::get),
                )
            })
            .collect(),
    )
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldsConfig {
    #[serde(default)]
    pub e: Vec<TermConfig>,
    #[serde(default)]
    pub h: Vec<TermConfig>,
}

fn default_mode() -> Mode {
    Mode::Exact
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}

fn default_grid() -> GridSpec {
    GridSpec::centered_cube(1.0, 0.1)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default = "default_mode")]
    pub mode: Mode,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub suites: Vec<String>,
    /// Float-mode tolerance; exact mode compares with zero.
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    pub medium: MediumConfig,
    pub dirac: DiracConfig,
    #[serde(default)]
    pub fields: FieldsConfig,
    #[serde(default = "default_grid")]
    pub grid: GridSpec,
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ScenarioConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn default_scenario() -> Self {
        Self::from_json(DEFAULT_CONFIG).expect("shipped default config is valid")
    }

    pub fn validate(&self) -> Result<()> {
        if !self.tolerance.is_finite() || self.tolerance < 0.0 {
            return Err(Error::Config(format!(
                "tolerance must be a finite nonnegative number, got {}",
                self.tolerance
            )));
        }
        self.grid.dims()?;
        crate::harness::suites::resolve(&self.suites)?;
        Ok(())
    }

    pub fn e_field<S: Scalar>(&self) -> AnalyticField<S> {
        field_from_terms(&self.fields.e)
    }

    pub fn h_field<S: Scalar>(&self) -> AnalyticField<S> {
        field_from_terms(&self.fields.h)
    }
}
