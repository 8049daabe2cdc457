//! The JSON emitted by one subcommand must be accepted verbatim by the
//! subcommands that consume the same shape.

use std::process::{Command, Output};

const PHI: &str = r#"{"a":[-7,0],"b":[-3,0],"c":[2,0],"d":[8,0]}"#;

fn copcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_copcalc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = copcalc(args);
    assert!(
        out.status.success(),
        "`{args:?}` failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn adjoint_feeds_compose_feeds_translation() {
    let sigma = stdout_of(&["adjoint", "--map", PHI]);
    let product = stdout_of(&["compose", "--map", PHI, "--map", sigma.trim()]);
    let v: serde_json::Value =
        serde_json::from_str(&stdout_of(&["translation", "--map", product.trim()])).unwrap();
    // phi o sigma is parabolic at -1 with translation number 2b = 0.4.
    assert!((v["gamma"][0].as_f64().unwrap() + 1.0).abs() < 1e-9);
    assert!((v["a"][0].as_f64().unwrap() - 0.4).abs() < 1e-9);
}

#[test]
fn parabolic_feeds_membership() {
    let rho = stdout_of(&["parabolic", "--gamma", "[-1,0]", "--a", "[0.3,0]"]);
    let psi = stdout_of(&["compose", "--map", rho.trim(), "--map", PHI]);
    let verdict: serde_json::Value = serde_json::from_str(&stdout_of(&[
        "membership",
        "--phi",
        PHI,
        "--psi",
        psi.trim(),
    ]))
    .unwrap();
    assert_eq!(verdict["member"], serde_json::json!(true));
    assert_eq!(verdict["condition"], serde_json::json!("a"));
    assert!((verdict["family_parameter"][0].as_f64().unwrap() - 0.3).abs() < 1e-8);
}

#[test]
fn family_constructor_matches_context() {
    let ctx: serde_json::Value = serde_json::from_str(&stdout_of(&[
        "context", "--family", "phi", "--zeta", "[1,0]", "--eta", "[-1,0]", "--sprime", "0.5",
        "--d", "4",
    ]))
    .unwrap();
    assert!((ctx["s"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    assert!((ctx["eta"][0].as_f64().unwrap() + 1.0).abs() < 1e-12);
}

#[test]
fn essnorm_agrees_with_essspec_extremes() {
    let norm: serde_json::Value = serde_json::from_str(&stdout_of(&[
        "essnorm",
        "--element",
        r#"{"c":0,"p":[1],"q":[1]}"#,
        "--s",
        "2",
    ]))
    .unwrap();
    let spec: serde_json::Value = serde_json::from_str(&stdout_of(&[
        "essspec",
        "--element",
        r#"{"c":0,"p":[1],"q":[1]}"#,
        "--s",
        "2",
        "--grid-n",
        "256",
    ]))
    .unwrap();
    let max_abs = spec["samples"]
        .as_array()
        .unwrap()
        .iter()
        .map(|z| (z[0].as_f64().unwrap().powi(2) + z[1].as_f64().unwrap().powi(2)).sqrt())
        .fold(0.0, f64::max);
    assert!((norm["value"].as_f64().unwrap() - max_abs).abs() < 1e-9);
}

#[test]
fn exit_codes() {
    assert_eq!(
        copcalc(&["classify", "--map", "garbage"]).status.code(),
        Some(2)
    );
    // Interior fixed point: a mathematical precondition, not a parse error.
    assert_eq!(
        copcalc(&["parabolic", "--gamma", "[0.5,0]", "--a", "1"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(copcalc(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_single_criterion_passes() {
    let out = stdout_of(&["verify", "2", "--output", "table"]);
    assert!(out.starts_with("PASS"), "unexpected: {out}");
}
