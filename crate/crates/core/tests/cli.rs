use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn mendo(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mendo"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn input(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/inputs").join(format!("{name}.json"))).unwrap()
}

#[test]
fn success_prints_json() {
    let out = mendo(&["lin", "snf"], &input("matrix"));
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v.is_object());
    assert!(out.stdout.ends_with(b"\n"));
}

#[test]
fn negative_verdict_exits_one_with_json() {
    let out = mendo(&["psfc", "check"], &input("z2_squared"));
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passes"], serde_json::Value::Bool(false));
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(mendo(&["frobnicate"], "").status.code(), Some(2));
    let bad = mendo(&["lin", "snf"], "{not json");
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
    assert!(!bad.stderr.is_empty());
    assert_eq!(mendo(&["ff", "build", "--p", "4", "--k", "1"], "").status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    let out = mendo(&["--help"], "");
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("psfc"));
}

#[test]
fn dlog_limit_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_mendo"))
        .args(["ff", "build", "--p", "3", "--k", "4"])
        .env("MENDO_DLOG_LIMIT", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
