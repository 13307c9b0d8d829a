use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn fracops(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracops")).args(args).output().unwrap()
}

fn json_stdout(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn unit_jump_file(dir: &Path) -> String {
    let path = dir.join("jump.json");
    let spec = r#"{
        "domain": [0, 2],
        "segments": [
            {"interval": [0, 1], "kind": "poly", "coefficients": [0, 1]},
            {"interval": [1, 2], "kind": "poly", "coefficients": [1, 1]}
        ],
        "jumps": [{"at": 1, "size": 1}]
    }"#;
    std::fs::write(&path, spec).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn axioms_single_family_to_stdout() {
    let out = fracops(&["axioms", "--family", "geometric", "--grid-n", "512"]);
    assert_eq!(out.status.code(), Some(0));
    let reports = json_stdout(&out);
    let report = &reports[0];
    assert_eq!(report["family"], "geometric");
    assert_eq!(report["match"], true);
    for key in ["identity", "index_law", "continuity", "positivity"] {
        assert!(report["axioms"][key]["pass"].is_boolean(), "{key}");
        assert_eq!(report["axioms"][key]["pass"], report["expected_profile"][key]);
    }
    assert_eq!(report["axioms"]["identity"]["pass"], false);
    assert_eq!(report["config_echo"]["grid_n"], 512);
}

#[test]
fn axioms_writes_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = fracops(&["axioms", "--family", "phase", "--grid-n", "256", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(report[0]["axioms"]["positivity"]["pass"], false);
    assert!(report[0]["axioms"]["positivity"]["min_real"].as_f64().unwrap() < -1.0);
}

#[test]
fn tightened_tolerance_produces_a_mismatch() {
    let out = fracops(&["axioms", "--family", "riemann_liouville", "--grid-n", "256", "--tol-index", "1e-16"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("index_law"));
    assert_eq!(json_stdout(&out)[0]["match"], false);
}

#[test]
fn configuration_errors_exit_two() {
    assert_eq!(fracops(&["axioms", "--family", "nonsense"]).status.code(), Some(2));
    assert_eq!(fracops(&["axioms", "--interval", "1,0"]).status.code(), Some(2));
    assert_eq!(fracops(&["riesz-check", "--alpha-grid", "0.5,2"]).status.code(), Some(2));
    assert_eq!(fracops(&["transmute-check", "--phi", "/nonexistent.json", "--alpha", "0.5"]).status.code(), Some(2));
}

#[test]
fn laplace_fit_recovers_log_slopes() {
    let out = fracops(&["laplace-fit", "--family", "riemann_liouville", "--grid-n", "8192"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json_stdout(&out);
    assert_eq!(report["match"], true);
    let text = report.to_string();
    for key in ["intercept", "slope", "max_residual"] {
        assert!(text.contains(key), "{key}");
    }
}

#[test]
fn laplace_fit_rejects_non_exponential_families() {
    let out = fracops(&["laplace-fit", "--family", "scaled_order", "--grid-n", "4096"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn riesz_check_reports_each_family() {
    let out = fracops(&["riesz-check", "--alpha-grid", "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9", "--modes", "64"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    for name in ["riesz", "scaled_2", "squared_order"] {
        assert!(text.contains(name), "{name}");
    }
}

#[test]
fn transmute_check_on_a_jump_integrator() {
    let dir = tempfile::tempdir().unwrap();
    let phi = unit_jump_file(dir.path());
    let out_path = dir.path().join("transmute.json");
    let out = fracops(&[
        "transmute-check",
        "--phi",
        &phi,
        "--alpha",
        "0.5",
        "--grid-n",
        "1024",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(out_path).unwrap()).unwrap();
    assert_eq!(report["pass"], true);
    assert!(report.to_string().contains("pushforward"));
}
