use std::process::{Command, Output};

use qpalg_core::catalog::CatalogSpec;
use qpalg_core::qp::{export_json, import_json};
use qpalg_core::Scalar;
use serde_json::Value;

fn qpalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpalg")).args(args).env_remove("QPALG_MAX_N").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_ck6_text() {
    let o = qpalg(&["verify", "--algebra", "CK6", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("QP1..QP4: pass, dim 32"));
}

#[test]
fn bad_spec_is_a_usage_error() {
    let o = qpalg(&["verify", "--algebra", "S:1:alpha=0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("S requires N ≥ 2"));
    assert_eq!(qpalg(&["verify", "--algebra", "Q:2"]).status.code(), Some(2));
    assert_eq!(qpalg(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qpalg(&["loop-check", "--algebra", "K:1", "--window", "2"]).status.code(), Some(2));
    assert_eq!(qpalg(&["locality", "--example", "nope"]).status.code(), Some(2));
}

#[test]
fn heisenberg_report() {
    let o = qpalg(&["locality", "--example", "heisenberg_5_5", "--nmax", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "qpalg/1");
    assert_eq!(v["bracket_constant"], "120");
    let xx = v["pairs"].as_array().unwrap().iter().find(|p| p["pair"] == "x,x").unwrap();
    assert_eq!(xx["order"], 2);
    let text = stdout(&qpalg(&["locality", "--example", "heisenberg_5_5", "--nmax", "6", "--format", "text"]));
    assert!(text.contains("x x: order 2"));
    assert!(text.contains("120·C(n,5)"));
}

#[test]
fn nonlocal_example_fails_with_witness() {
    let o = qpalg(&["locality", "--example", "nonlocal_2_7", "--window", "5", "--nmax", "10"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let lg = v["pairs"].as_array().unwrap().iter().find(|p| p["pair"] == "L,G").unwrap();
    assert_eq!(lg["verdict"], "not local up to 10");
    assert!(lg["witness"].is_array());
}

#[test]
fn catalog_commands_pass() {
    for cmd in ["loop-check", "locality", "nth-products"] {
        let o = qpalg(&[cmd, "--algebra", "S:2:alpha=1/2"]);
        assert_eq!(o.status.code(), Some(0), "{cmd}: {}", String::from_utf8_lossy(&o.stderr));
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["passed"], true);
        assert_eq!(v["command"], cmd);
    }
}

#[test]
fn export_round_trip_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k2.json");
    let p = path.to_str().unwrap();
    assert_eq!(qpalg(&["export", "--algebra", "K:2", "--out", p]).status.code(), Some(0));
    let a = import_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(a, CatalogSpec::k(2).build().unwrap());
    let o = qpalg(&["verify", "--input", p]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(qpalg(&["export", "--algebra", "K:2", "--out", "/nonexistent/dir/x.json"]).status.code(), Some(2));
    assert_eq!(qpalg(&["verify", "--input", "/nonexistent/x.json"]).status.code(), Some(2));
}

#[test]
fn broken_algebra_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    let a = CatalogSpec::k(2).build().unwrap().with_bracket_constant(1, 2, 3, Scalar::one()).unwrap();
    std::fs::write(&path, export_json(&a)).unwrap();
    let o = qpalg(&["verify", "--input", path.to_str().unwrap(), "--format", "text"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn generator_cap() {
    let capped = |n: &str, spec: &str| {
        Command::new(env!("CARGO_BIN_EXE_qpalg"))
            .args(["export", "--algebra", spec])
            .env("QPALG_MAX_N", n)
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(capped("3", "K:3"), Some(0));
    assert_eq!(capped("3", "K:4"), Some(2));
    assert_eq!(capped("5", "CK6"), Some(2));
    assert_eq!(capped("zero", "K:1"), Some(2));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["nth-products", "--algebra", "W:2"];
    assert_eq!(qpalg(&args).stdout, qpalg(&args).stdout);
}
