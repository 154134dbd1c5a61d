use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qmd_core::dirac::{default_points, reconstruct_gammas};
use qmd_core::field::{apply_operator, AnalyticField};
use qmd_core::harness::config::{field_from_terms, TermConfig};
use qmd_core::harness::{parse_operator, print_operator, Format, ScenarioConfig};
use qmd_core::{
    alpha_vector, dispersion_check, maxwell_to_dirac, run_suite, DispersionRecord, Exact, Float,
    MaxwellPair, Mode, Scalar,
};

#[derive(Parser)]
#[command(
    name = "qmd",
    version,
    about = "Exact checks for the quaternionic Maxwell and Dirac operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and print a report
    Verify {
        #[command(flatten)]
        common: Common,
        /// Suites to run (overrides the config); `all` selects every suite
        #[arg(long, num_args = 1..)]
        suite: Vec<String>,
    },
    /// Reconstruct the gamma matrices and print them as JSON
    Gamma {
        #[command(flatten)]
        common: Common,
    },
    /// Turn the configured Maxwell fields into a Dirac solution
    Transport {
        #[command(flatten)]
        common: Common,
    },
    /// Print the dispersion record and its identities
    Dispersion {
        #[command(flatten)]
        common: Common,
    },
    /// Apply an operator expression to a field and print residual norms
    Eval {
        #[command(flatten)]
        common: Common,
        /// Operator expression, e.g. "D + M[0,-5j,-3,0]"
        expr: String,
        /// Field as a JSON list of {"amp": [...4], "k": [...3]}; defaults to the configured E
        #[arg(long)]
        field: Option<String>,
    },
}

#[derive(Args)]
struct Common {
    /// Scenario config (JSON); the shipped default is used when omitted
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: OutFormat,
    /// Arithmetic mode (overrides the config)
    #[arg(long)]
    mode: Option<Mode>,
    /// Float-mode tolerance (overrides the config)
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Text,
}

impl Common {
    fn load(&self) -> Result<ScenarioConfig> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                ScenarioConfig::from_json(&text)?
            }
            None => ScenarioConfig::default_scenario(),
        };
        if let Some(mode) = self.mode {
            cfg.mode = mode;
        }
        if let Some(tol) = self.tol {
            cfg.tolerance = tol;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether every check passed.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify { common, suite } => {
            let mut cfg = common.load()?;
            if !suite.is_empty() {
                cfg.suites = suite;
            }
            let report = run_suite(&cfg)?;
            let format = match common.format {
                OutFormat::Json => Format::Json,
                OutFormat::Text => Format::Text,
            };
            let out = report.emit(format);
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            Ok(report.passed())
        }
        Command::Gamma { common } => dispatch(&common, None, gamma::<Exact>, gamma::<Float>),
        Command::Transport { common } => {
            dispatch(&common, None, transport::<Exact>, transport::<Float>)
        }
        Command::Dispersion { common } => {
            dispatch(&common, None, dispersion::<Exact>, dispersion::<Float>)
        }
        Command::Eval {
            common,
            expr,
            field,
        } => {
            let extra = Some((expr, field));
            dispatch(&common, extra, eval::<Exact>, eval::<Float>)
        }
    }
}

type EvalArgs = Option<(String, Option<String>)>;
type Handler = fn(&ScenarioConfig, &EvalArgs) -> Result<(serde_json::Value, bool)>;

fn dispatch(common: &Common, extra: EvalArgs, exact: Handler, float: Handler) -> Result<bool> {
    let cfg = common.load()?;
    let (value, ok) = match cfg.mode {
        Mode::Exact => exact(&cfg, &extra)?,
        Mode::Float => float(&cfg, &extra)?,
    };
    match common.format {
        OutFormat::Json => println!("{}", serde_json::to_string_pretty(&value)?),
        OutFormat::Text => print_text(&value, ""),
    }
    Ok(ok)
}

fn print_text(v: &serde_json::Value, prefix: &str) {
    match v {
        serde_json::Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                match v {
                    serde_json::Value::Object(_) => print_text(v, &key),
                    other => println!("{key} = {other}"),
                }
            }
        }
        other => println!("{other}"),
    }
}

fn pair<S: Scalar>(z: &S) -> [f64; 2] {
    let c = z.to_c64();
    [c.re, c.im]
}

fn field_json<S: Scalar>(f: &AnalyticField<S>) -> serde_json::Value {
    f.terms()
        .iter()
        .map(|t| json!({ "amp": t.amp.each_ref().map(pair), "k": t.k.each_ref().map(pair) }))
        .collect()
}

fn tolerance_for<S: Scalar>(cfg: &ScenarioConfig) -> f64 {
    match S::MODE {
        Mode::Exact => 0.0,
        Mode::Float => cfg.tolerance,
    }
}

fn gamma<S: Scalar>(cfg: &ScenarioConfig, _: &EvalArgs) -> Result<(serde_json::Value, bool)> {
    let (p1, p2) = default_points::<S>();
    let rec = reconstruct_gammas(&p1, &p2)?;
    let sign = rec.gammas.clifford_sign(cfg.tolerance);
    let product = rec.product_residual().max_modulus();
    let value = json!({
        "mode": S::MODE,
        "gammas": rec.gammas.record(),
        "clifford_sign": sign,
        "q": rec.q.to_pairs(),
        "q_minus_gamma123": product,
    });
    Ok((value, sign.is_some()))
}

fn transport<S: Scalar>(cfg: &ScenarioConfig, _: &EvalArgs) -> Result<(serde_json::Value, bool)> {
    let m = cfg.medium.params::<S>()?;
    let p = cfg.dirac.params::<S>()?;
    let fields = MaxwellPair::new(cfg.e_field(), cfg.h_field())?;
    let f = maxwell_to_dirac(&fields, &m, &p, cfg.tolerance)?;
    let residual = qmd_core::bridge::dirac_residual(&f, &alpha_vector(&p));
    let ok = residual.is_negligible(tolerance_for::<S>(cfg));
    let value = json!({
        "mode": S::MODE,
        "kappa": pair(&m.wavenumber()?),
        "alpha": alpha_vector(&p).coords().each_ref().map(pair),
        "f": field_json(&f),
        "dirac_residual": residual.max_amplitude(),
    });
    Ok((value, ok))
}

fn dispersion<S: Scalar>(cfg: &ScenarioConfig, _: &EvalArgs) -> Result<(serde_json::Value, bool)> {
    let m = cfg.medium.params::<S>()?;
    let p = cfg.dirac.params::<S>()?;
    let record = DispersionRecord::from_medium(&m, &p)?;
    let check = dispersion_check(&record)?;
    let tol = tolerance_for::<S>(cfg);
    let residuals: serde_json::Map<String, serde_json::Value> = check
        .entries()
        .iter()
        .map(|(name, r)| (name.to_string(), json!(r.modulus())))
        .collect();
    let value = json!({
        "mode": S::MODE,
        "record": record.record(),
        "residuals": residuals,
    });
    Ok((value, check.passes(tol)))
}

fn eval<S: Scalar>(cfg: &ScenarioConfig, extra: &EvalArgs) -> Result<(serde_json::Value, bool)> {
    let Some((expr, field)) = extra else {
        bail!("missing expression");
    };
    let op = parse_operator::<S>(expr)?;
    let f: AnalyticField<S> = match field {
        Some(text) => {
            let terms: Vec<TermConfig> = serde_json::from_str(text).context("parsing --field")?;
            field_from_terms(&terms)
        }
        None => cfg.e_field(),
    };
    let out = apply_operator(&op, &f).normalized();
    let value = json!({
        "mode": S::MODE,
        "operator": print_operator(&op)?,
        "result": field_json(&out),
        "max_amplitude": out.max_amplitude(),
        "identically_zero": out.is_identically_zero(),
    });
    Ok((value, true))
}
