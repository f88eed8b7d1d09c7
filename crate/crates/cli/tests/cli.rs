use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const E8_PURE: &str = r#"{"kind":"bloch","dim":3,"n":[0,0,0,0,0,0,0,-1]}"#;
const MAX_MIXED: &str = r#"{"kind":"bloch","dim":3,"n":[0,0,0,0,0,0,0,0]}"#;

fn gurmix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gurmix"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn eval_q_on_maximally_mixed_qutrit() {
    let out = gurmix(&[
        "eval-q", "--state", MAX_MIXED, "--a", "lambda3", "--b", "lambda7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let q = json(&out)["q"].as_f64().unwrap();
    assert!((q - 4.0 / 9.0).abs() < 1e-12, "{q}");
}

#[test]
fn eval_q_reads_state_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("state.json");
    std::fs::write(&path, E8_PURE).unwrap();
    let out = gurmix(&[
        "eval-q",
        "--state",
        path.to_str().unwrap(),
        "--a",
        "lambda3",
        "--b",
        "lambda6",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["q"].as_f64().unwrap().abs() < 1e-12);
}

#[test]
fn invalid_input_exits_2() {
    let out = gurmix(&[
        "eval-q",
        "--state",
        r#"{"kind":"bloch","dim":3}"#,
        "--a",
        "lambda3",
        "--b",
        "lambda7",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));

    let out = gurmix(&[
        "eval-q", "--state", MAX_MIXED, "--a", "sigmaX", "--b", "lambda7",
    ]);
    assert_eq!(out.status.code(), Some(2));

    assert_eq!(gurmix(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn non_positive_state_exits_3() {
    let out = gurmix(&[
        "eval-q",
        "--state",
        r#"{"kind":"bloch","dim":3,"n":[0,0,0,0,0,0,0,1.5]}"#,
        "--a",
        "lambda3",
        "--b",
        "lambda7",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn scheme_pure_and_mixed() {
    let out = gurmix(&["scheme", "--state", E8_PURE]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "Pure");
    assert_eq!(v["budget"]["total"], 4);

    let v = json(&gurmix(&["scheme", "--state", MAX_MIXED]));
    assert_eq!(v["verdict"], "Mixed");
    assert_eq!(v["budget"]["total"], 8);

    let qubit = r#"{"kind":"bloch","dim":2,"n":[0,0,1]}"#;
    assert_eq!(gurmix(&["scheme", "--state", qubit]).status.code(), Some(2));
}

#[test]
fn classify_isotropic() {
    let state = r#"{"kind":"family","name":"isotropic","params":{"p":0.5}}"#;
    let out = gurmix(&["classify", "--state", state, "--grid", "16"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "Mixed");
    assert_eq!(v["expectations_used"].as_array().unwrap().len(), 8);
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    std::fs::read(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[test]
fn concordance_writes_reports_and_is_deterministic() {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    for d in &dirs {
        let out = gurmix(&[
            "concordance",
            "qubit_closed",
            "--grid",
            "8",
            "--out",
            d.path().to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    for name in ["qubit_closed.json", "qubit_closed.csv", "summary.txt"] {
        assert_eq!(
            read(dirs[0].path(), name),
            read(dirs[1].path(), name),
            "{name} differs"
        );
    }
    let report: Value = serde_json::from_slice(&read(dirs[0].path(), "qubit_closed.json")).unwrap();
    assert_eq!(report["verdict"]["kind"], "ExactMatch");
    assert_eq!(gurmix(&["concordance", "no_such_formula"]).status.code(), Some(2));
}

#[test]
fn budget_formats() {
    let v = json(&gurmix(&["budget", "--format", "json"]));
    let rows = v.as_array().unwrap();
    let printed: Vec<&str> = rows
        .iter()
        .map(|r| r["printed"].as_str().unwrap())
        .collect();
    assert_eq!(printed, ["3", "3-5", "4-8", "4-8"]);
    let csv = gurmix(&["budget", "--format", "csv"]);
    assert_eq!(csv.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&csv.stdout).lines().count(), 5);
}

#[test]
fn sweep_is_deterministic() {
    let args = [
        "sweep",
        "--family",
        "isotropic",
        "--start",
        "0",
        "--stop",
        "1",
        "--step",
        "0.25",
        "--grid",
        "8",
    ];
    let (a, b) = (gurmix(&args), gurmix(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(
        text.lines().next(),
        Some("param,q_max,linear_entropy,verdict")
    );
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn sweep_out_of_range_exits_2() {
    let out = gurmix(&[
        "sweep",
        "--family",
        "isotropic",
        "--start",
        "-0.5",
        "--stop",
        "1",
        "--step",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn blind_spot_qubit() {
    let out = gurmix(&["blind-spot", "--family", "qubit", "--epsilon", "0.01"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let t = v["threshold"].as_f64().unwrap();
    assert!((1.0 - t * t - 0.01).abs() < 1e-8, "{t}");
}

#[test]
fn audit_exit_codes() {
    assert_eq!(
        gurmix(&["audit", "--count", "40", "--seed", "1"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(gurmix(&["audit", "--count", "0"]).status.code(), Some(2));
}
