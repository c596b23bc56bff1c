//! Integration tests for the command-line surface: exit codes, JSON report
//! shape, and the tropical curve file format.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tautring"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn bananas_lists_residue_data() {
    let out = run(&["bananas", "--g", "0", "--n", "4", "--A", "2,-2", "--k", "0"]);
    assert!(out.status.success());
    let json = stdout_json(&out);
    assert_eq!(json["mode"], "residue");
    assert_eq!(json["entries"].as_array().unwrap().len(), 3);
    assert_eq!(json["b_bound"], 2);
    assert_eq!(json["conventions"]["relation_sign"], -1);
}

#[test]
fn bananas_empty_is_success() {
    let out = run(&["bananas", "--g", "1", "--n", "2", "--A", "0,0", "--k", "0"]);
    assert!(out.status.success());
    let json = stdout_json(&out);
    assert_eq!(json["entries"].as_array().unwrap().len(), 0);
}

#[test]
fn bananas_rejects_sum_mismatch() {
    let out = run(&["bananas", "--g", "0", "--n", "4", "--A", "1,0", "--k", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let message = String::from_utf8_lossy(&out.stderr);
    assert!(message.contains("sum of A"), "stderr: {message}");
}

#[test]
fn dr_reports_stored_terms() {
    let out = run(&["dr", "--g", "1", "--n", "2", "--A", "2,-2"]);
    assert!(out.status.success());
    let json = stdout_json(&out);
    assert_eq!(json["degree"], 1);
    assert_eq!(json["num_terms"], 3);
}

#[test]
fn verify_splitting_passes() {
    let out = run(&[
        "verify-splitting",
        "--g",
        "0",
        "--n",
        "4",
        "--A",
        "2,-2",
        "--k",
        "0",
    ]);
    assert!(out.status.success());
    let json = stdout_json(&out);
    assert_eq!(json["pass"], true);
    assert_eq!(json["glued_space"]["g"], 1);
}

#[test]
fn verify_relation_passes() {
    let out = run(&["verify-relation", "--g", "0", "--n", "4", "--A", "1,1,1,-3"]);
    assert!(out.status.success());
    let json = stdout_json(&out);
    assert_eq!(json["pass"], true);
    assert_eq!(json["kind"], "relation");
}

#[test]
fn delta_prints_symbolic_form() {
    let fixture =
        Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/four-point-split-13.json");
    let out = run(&["delta", "--curve", fixture.to_str().unwrap()]);
    assert!(out.status.success());
    // A = (1, 2, 3, -6): a4 l4 - a3 l3 + (a2 + a4) e.
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        "-3*l3 - 6*l4 - 4*e0"
    );
}

#[test]
fn delta_resolves_against_fixture_root() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let out = Command::new(env!("CARGO_BIN_EXE_tautring"))
        .args(["delta", "--curve", "four-point-split-12.json"])
        .env("TAUTRING_FIXTURES", &root)
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "-3*l3 - 6*l4");
}

#[test]
fn out_flag_writes_report() {
    let dir = std::env::temp_dir().join("tautring-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = run(&[
        "verify-relation",
        "--g",
        "1",
        "--n",
        "2",
        "--A",
        "3,-1",
        "--k",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json["pass"], true);
    std::fs::remove_file(&path).unwrap();
}
