//! End-to-end checks of the binary: exit codes, JSON output shape, and
//! byte-for-byte determinism of repeated invocations.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cycloroots"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn classify_distinguished_counts() {
    let (code, stdout, _) = run(&[
        "classify",
        "--group",
        "G(3,1,2)",
        "--flavor",
        "distinguished",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["count"], 2);
}

#[test]
fn factor_two_patterns() {
    let (code, stdout, _) = run(&["factor", "--conductor", "12", "--two"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("ramified"));
}

#[test]
fn ring_command_reports_rank() {
    let (code, stdout, _) = run(&[
        "ring",
        "--conductor",
        "7",
        "--fixed-by",
        "1,2,4",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["rank"], 2);
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, stderr) = run(&["classify", "--group", "H(3,1,2)"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("position"), "stderr: {stderr}");
    // a subgroup violation in the ring override is also a usage error
    let (code, _, _) = run(&["classify", "--group", "mu(2)", "--ring", "12/1,2"]);
    assert_eq!(code, 2);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["rootsystem", "--group", "G(4,2,2)", "--format", "json"];
    let (c1, out1, _) = run(&args);
    let (c2, out2, _) = run(&args);
    assert_eq!(c1, 0);
    assert_eq!(c1, c2);
    assert_eq!(out1, out2);
}

#[test]
fn exceptional_lookup() {
    let (code, stdout, _) = run(&["exceptional", "--name", "G23", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v[0]["order"], 120);
    assert_eq!(v[0]["genera"], 1);
}

#[test]
fn simple_command_runs_dihedral() {
    let (code, stdout, _) = run(&[
        "simple",
        "--group",
        "dihedral-real(5)",
        "--seed",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["simple_count"], 2);
    assert_eq!(v["length_condition"], true);
}
