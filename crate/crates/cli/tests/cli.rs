use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hilbert-coth"));
    c.env_remove("HCOTH_OUT_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--output-format", "json"]);
    let out = run(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn scratch_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hcoth-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

#[test]
fn constants_table() {
    let (code, v) = json(&["constants", "--sigma", "1.5,2,3,5", "--m", "1", "--n", "1", "--alpha", "1", "--beta", "1", "--p", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], "1");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    // σ = 2, m = n = 1: every constant is π²/12.
    let pi2_12 = std::f64::consts::PI.powi(2) / 12.0;
    for key in ["mellin", "k1", "k2", "k"] {
        assert!((rows[1][key].as_f64().unwrap() - pi2_12).abs() < 1e-14, "{key}");
    }
    assert_eq!(v["summary"]["passed"], 4);
}

#[test]
fn weights_rows() {
    let (code, v) = json(&["weights", "--m", "2", "--alpha", "2", "--sigma", "2", "--ynorm", "0.01,1,100"]);
    assert_eq!(code, 0);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    for r in rows {
        assert_eq!(r["status"], "pass");
        assert!(r["deviation"].as_f64().unwrap() <= 1e-8);
    }
}

#[test]
fn empty_grid_is_a_config_error() {
    let out = run(&["verify", "--preset", "reverse-p-half", "--sigma", ""]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty grid"));
}

#[test]
fn invalid_parameters_are_config_errors() {
    assert_eq!(run(&["constants", "--sigma", "0.5"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--preset", "forward", "--p", "0.5"]).status.code(), Some(2));
    assert_eq!(run(&["sharpness", "--eps", "0.02,0.2"]).status.code(), Some(2));
    assert_eq!(run(&["suite", "--criteria", "11"]).status.code(), Some(2));
}

#[test]
fn injected_misprint_fails_the_weight_criterion() {
    let (code, v) = json(&["suite", "--criteria", "3", "--inject-k1-typo"]);
    assert_eq!(code, 1);
    let varpi = v["rows"].as_array().unwrap().iter().find(|r| r["check"] == "ϖ(σ, x) = K₁").unwrap();
    assert_eq!(varpi["status"], "fail");
    let (code, _) = json(&["suite", "--criteria", "3"]);
    assert_eq!(code, 0);

    let (code, v) = json(&["weights", "--weight", "varpi", "--n", "2", "--beta", "1", "--alpha", "2", "--inject-k1-typo"]);
    assert_eq!(code, 1);
    assert_eq!(v["summary"]["failed"], 3);
}

#[test]
fn reverse_presets() {
    for preset in ["reverse-p-half", "reverse-p-neg"] {
        let (code, v) = json(&["verify", "--preset", preset, "--sigma", "2"]);
        assert_eq!(code, 0, "{preset}");
        let row = &v["rows"][0];
        assert_eq!(row["direction"], "reverse");
        assert!(row["ratio"].as_f64().unwrap() > 1.0);
    }
    assert_eq!(run(&["verify", "--preset", "reverse-p-neg", "--p", "0.5"]).status.code(), Some(2));
}

#[test]
fn json_is_deterministic() {
    let args = ["sharpness", "--eps", "0.5,0.2,0.1"];
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timestamp");
        serde_json::to_string(&v).unwrap()
    };
    let (code_a, a) = json(&args);
    let (code_b, b) = json(&args);
    assert_eq!(code_a, 0);
    assert_eq!(code_a, code_b);
    assert!(a["timestamp"].as_str().unwrap().ends_with('Z'));
    assert_eq!(strip(a), strip(b));
}

#[test]
fn csv_projection() {
    let out = run(&["constants", "--sigma", "2,3", "--output-format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("index,status,sigma,p,q,mellin,mellin_quadrature,k1,k2,k,deviation,message"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn output_files() {
    let dir = scratch_dir("out");
    let status = bin()
        .env("HCOTH_OUT_DIR", &dir)
        .args(["constants", "--sigma", "2", "--output-format", "json"])
        .status()
        .unwrap();
    assert!(status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("constants.json")).unwrap()).unwrap();
    assert_eq!(v["command"], "constants");

    let status = bin()
        .env("HCOTH_OUT_DIR", &dir)
        .args(["constants", "--sigma", "2", "--output-format", "csv", "--output", "sub/table.csv"])
        .status()
        .unwrap();
    assert!(status.success());
    assert!(dir.join("sub/table.csv").exists());
    std::fs::remove_dir_all(&dir).unwrap();

    let out = run(&["constants", "--output", "/proc/no-such-dir/r.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn operator_norm_rows() {
    let (code, v) = json(&["opnorm", "--family", "concentrated"]);
    assert_eq!(code, 0);
    let row = &v["rows"][0];
    assert_eq!(row["family"], "concentrated");
    assert!(row["ratio_to_k"].as_f64().unwrap() < 0.5);
    // A search stopped before its bracket shrinks is a non-convergence.
    let (code, v) = json(&["opnorm", "--family", "concentrated", "--max-iter", "3"]);
    assert_eq!(code, 3);
    assert_eq!(v["rows"][0]["status"], "non_convergence");
}

#[test]
fn corollary_preset() {
    let (code, v) = json(&["verify", "--preset", "corollary", "--sigma", "2"]);
    assert_eq!(code, 0);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r["one_dimensional"] == true));
}
