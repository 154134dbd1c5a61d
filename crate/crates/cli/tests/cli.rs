use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn qmd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmd"))
        .args(args)
        .output()
        .expect("qmd runs")
}

fn config(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "configs", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check named {name}"))
}

#[test]
fn bridge_suite_passes() {
    let out = qmd(&["verify", "--suite", "bridge"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["mode"], "exact");
    assert_eq!(r["conventions"]["maxwell_time_factor"], "exp(-j omega t)");
    assert!(r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["status"] == "pass"));
}

#[test]
fn mismatched_kappa_fails_projector_laws() {
    let out = qmd(&["verify", "--config", &config("mismatch.json")]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    let orth = check(&r, "P- P+ = 0");
    assert_eq!(orth["status"], "fail");
    assert_eq!(orth["residual"], 3.75);
    assert_eq!(check(&r, "P+ + P- = 1")["status"], "pass");
}

#[test]
fn empty_suite_list_is_an_empty_report() {
    let dir = std::env::temp_dir().join(format!("qmd-empty-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("empty.json");
    std::fs::write(
        &path,
        r#"{"medium": {"omega": 1}, "dirac": {"energy": 5, "mass": 3}}"#,
    )
    .unwrap();
    let out = qmd(&["verify", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["checks"].as_array().unwrap().is_empty());
}

#[test]
fn errors_exit_with_two() {
    assert_eq!(
        qmd(&["verify", "--suite", "nonsense"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qmd(&["verify", "--config", "/nonexistent/qmd.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(qmd(&["eval", "D + "]).status.code(), Some(2));
    assert_eq!(
        qmd(&["verify", "--suite", "bridge", "--tol", "-1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn reports_are_byte_deterministic() {
    for mode in ["exact", "float"] {
        let a = qmd(&["verify", "--suite", "all", "--mode", mode]);
        let b = qmd(&["verify", "--suite", "all", "--mode", mode]);
        assert_eq!(a.stdout, b.stdout, "{mode}");
    }
}

#[test]
fn text_format_has_one_line_per_check() {
    let text = qmd(&["verify", "--suite", "algebra", "--format", "text"]);
    let js = json(&qmd(&["verify", "--suite", "algebra"]));
    let lines = String::from_utf8(text.stdout).unwrap();
    assert_eq!(
        lines.lines().count(),
        js["checks"].as_array().unwrap().len()
    );
    assert!(lines.lines().all(|l| l.starts_with("PASS ")));
}

#[test]
fn float_mode_uses_tolerance() {
    let r = json(&qmd(&[
        "verify",
        "--suite",
        "operators",
        "--mode",
        "float",
        "--tol",
        "1e-9",
    ]));
    assert_eq!(r["mode"], "float");
    let tols: Vec<&Value> = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| &c["tolerance"])
        .collect();
    assert!(tols.iter().any(|t| *t == 1e-9));
    // the round-trip check counts broken expressions and is never loosened
    assert!(tols.iter().all(|t| *t == 1e-9 || *t == 0.0));
}

#[test]
fn transport_worked_example() {
    let out = qmd(&["transport", "--config", &config("vacuum-transport.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(
        v["f"][0]["amp"],
        serde_json::json!([[-1.0, 0.0], [0.0, 0.0], [1.0, 0.0], [0.0, 0.0]])
    );
    assert_eq!(
        v["f"][0]["k"],
        serde_json::json!([[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]])
    );
    assert_eq!(v["dirac_residual"], 0.0);
}

#[test]
fn transport_refuses_unmatched_fields() {
    // omega = 1 gives kappa = 1 while (5, 3) needs kappa = 4
    let out = qmd(&["transport", "--config", &config("mismatch.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dispersion"));
}

#[test]
fn dispersion_default() {
    let v = json(&qmd(&["dispersion"]));
    assert_eq!(v["record"]["kappa"], serde_json::json!([4.0, 0.0]));
    assert_eq!(v["record"]["momentum"], serde_json::json!([4.0, 0.0]));
    assert!(v["residuals"]
        .as_object()
        .unwrap()
        .values()
        .all(|r| r == 0.0));
}

#[test]
fn gamma_reports_sign() {
    let v = json(&qmd(&["gamma"]));
    assert_eq!(v["clifford_sign"], 1);
    assert_eq!(v["q_minus_gamma123"], 2.0);
}

#[test]
fn eval_dirac_operator_on_matched_wave() {
    let field = r#"[{"amp": [-1, 0, 1, 0], "k": [0, 0, 1]}]"#;
    let v = json(&qmd(&["eval", "D + M[0, -1j, 0, 0]", "--field", field]));
    assert_eq!(v["identically_zero"], true);
    let again = json(&qmd(&[
        "eval",
        "--field",
        field,
        "--",
        v["operator"].as_str().unwrap(),
    ]));
    assert_eq!(again["operator"], v["operator"]);
}

#[test]
fn eval_reports_nonzero_result() {
    let v = json(&qmd(&["eval", "d3", "--mode", "float"]));
    assert_eq!(v["mode"], "float");
    assert_eq!(v["identically_zero"], false);
    assert_eq!(v["max_amplitude"], 4.0);
}
