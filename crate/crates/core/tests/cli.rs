use std::fs;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_frobenius"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_small_case_passes_and_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&[
        "verify",
        "--n",
        "2",
        "--p",
        "1",
        "--samples",
        "5",
        "--no-timing",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let report: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["params"], json!({"n": 2, "p": 1}));
    assert_eq!(report["field"], "q");
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] != "fail"));
    let names: Vec<&str> = checks.iter().map(|c| c["check_name"].as_str().unwrap()).collect();
    let mut unique = names.clone();
    unique.sort();
    unique.dedup();
    assert_eq!(unique.len(), names.len());
    for name in [
        "symplectic.openness",
        "hess.connection",
        "roundtrip",
        "discrepancy.rho_completion",
    ] {
        assert!(names.contains(&name), "{name}");
    }
    assert!(checks.iter().all(|c| c["elapsed"].is_null()));
}

#[test]
fn verify_is_deterministic() {
    let args = [
        "verify",
        "--n",
        "3",
        "--p",
        "1",
        "--suite",
        "coadjoint",
        "--samples",
        "4",
        "--no-timing",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn verify_rejects_bad_params() {
    let out = run(&["verify", "--n", "3", "--p", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a multiple"));
    assert_eq!(run(&["verify", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--field", "r"]).status.code(), Some(2));
}

#[test]
fn verify_gaussian_single_class() {
    let out = run(&[
        "verify",
        "--n",
        "4",
        "--p",
        "2",
        "--field",
        "qi",
        "--suite",
        "coadjoint",
        "--samples",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("classes: 1 (expected 1)"));
}

#[test]
fn reduce_targets_smaller_algebra() {
    let out = run(&["reduce", "--n", "4", "--p", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["target"], json!({"n": 2, "p": 2}));
    assert_eq!(v["quotient"]["dim"], 8);
    assert_eq!(v["verification"], json!({"brackets": true, "form": true}));
    assert_eq!(v["reduced_covector"]["x"], json!([["1/1", "0/1"], ["0/1", "1/1"]]));
    assert_eq!(v["quotient"]["structure"].as_array().unwrap().len(), 8);
    assert_eq!(run(&["reduce", "--n", "2", "--p", "2"]).status.code(), Some(2));
}

#[test]
fn extend_reproduces_base_covector() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("base11.json");
    fs::write(&input, r#"{"x": [["1"]], "u": [["0"]]}"#).unwrap();
    let out = run(&["extend", "--n", "2", "--p", "1", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(
        v["covector"],
        json!({"x": [["0/1", "1/1"]], "u": [["0/1", "0/1"], ["1/1", "0/1"]]})
    );
    assert_eq!(v["report"]["passed"], true);

    // a covector without an open orbit is a mathematical failure
    fs::write(&input, r#"{"x": [["0"]], "u": [["1"]]}"#).unwrap();
    let out = run(&["extend", "--n", "2", "--p", "1", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn normal_form_reports_sign() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("cov.json");
    let output = dir.path().join("nf.json");
    // Krylov determinant det[H; HN] = 6 has the opposite sign to the base covector's −1
    fs::write(&input, r#"{"h": [["0", "-2"]], "n": [["0", "0"], ["-3/2", "0"]]}"#).unwrap();
    let out = run(&[
        "normal-form",
        "--input",
        input.to_str().unwrap(),
        "--json",
        output.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(v["base_sign"], "-1/1");
    assert_eq!(v["rep"]["x"], json!([["0/1", "1/1"]]));
    assert_eq!(v["rep"]["u"], json!([["0/1", "0/1"], ["-1/1", "0/1"]]));

    let out = run(&["normal-form", "--field", "qi", "--input", input.to_str().unwrap()]);
    assert_eq!(stdout_json(&out)["base_sign"], "1/1+0/1 i");

    fs::write(&input, r#"{"h": [["0", "-2"]], "n": [["0", "0"], ["3/2", "0"]]}"#).unwrap();
    let out = run(&["normal-form", "--input", input.to_str().unwrap()]);
    assert_eq!(stdout_json(&out)["base_sign"], "1/1");
}

#[test]
fn normal_form_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("cov.json");
    assert_eq!(
        run(&["normal-form", "--input", input.to_str().unwrap()]).status.code(),
        Some(2)
    );
    fs::write(&input, "not json").unwrap();
    assert_eq!(
        run(&["normal-form", "--input", input.to_str().unwrap()]).status.code(),
        Some(2)
    );
    fs::write(&input, r#"{"x": [["0", "1/0"]], "u": [["0","0"],["1","0"]]}"#).unwrap();
    assert_eq!(
        run(&["normal-form", "--input", input.to_str().unwrap()]).status.code(),
        Some(2)
    );
    // zero covector: no open orbit
    fs::write(&input, r#"{"x": [["0", "0"]], "u": [["0","0"],["0","0"]]}"#).unwrap();
    assert_eq!(
        run(&["normal-form", "--input", input.to_str().unwrap()]).status.code(),
        Some(1)
    );
}

#[test]
fn cocycle_reports_every_chart() {
    let out = run(&["cocycle", "--n", "4", "--p", "2", "--samples", "3", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let charts = v["charts"].as_array().unwrap();
    assert_eq!(charts.len(), 6);
    assert_eq!(charts[0]["chart"], "(1,2)");
    assert!(charts.iter().all(|c| c["status"] == "pass"));
}
