//! End-to-end tests of the `denjoy` binary: report determinism, export
//! round-trips, and the exit-code contract.

use std::path::PathBuf;
use std::process::{Command, Output};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_denjoy"))
}

fn example_spec() -> PathBuf {
    let dir = tempfile::tempdir().unwrap().keep();
    let path = dir.join("action.toml");
    std::fs::write(
        &path,
        r#"
schema = "denjoy-action/v1"
d = 2
gamma = ["sqrt(2) - 1", "sqrt(3) - 1"]

[[blowup]]
base = "0"
family = "geometric"
c = "1/4"
lambda = "1/2"
"#,
    )
    .unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    binary().args(args).output().unwrap()
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let spec = example_spec();
    let spec = spec.to_str().unwrap();
    let a = run(&["classify", "--spec", spec]);
    let b = run(&["classify", "--spec", spec]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let k1 = run(&["ktheory", "--spec", spec]);
    let k2 = run(&["ktheory", "--spec", spec]);
    assert_eq!(k1.stdout, k2.stdout);
}

#[test]
fn export_round_trips_reports() {
    let spec = example_spec();
    let dir = spec.parent().unwrap();
    let report_path = dir.join("report.json");
    let out = run(&[
        "rho",
        "--spec",
        spec.to_str().unwrap(),
        "--g",
        "2,-1",
    ]);
    assert!(out.status.success());
    std::fs::write(&report_path, &out.stdout).unwrap();
    let exported = run(&["export", "--input", report_path.to_str().unwrap()]);
    assert!(exported.status.success());
    assert_eq!(exported.stdout, out.stdout);
    // Round-trip through a file as well.
    let out_path = dir.join("exported.json");
    let again = run(&[
        "export",
        "--input",
        report_path.to_str().unwrap(),
        "--output",
        out_path.to_str().unwrap(),
    ]);
    assert!(again.status.success());
    assert_eq!(std::fs::read(&out_path).unwrap(), out.stdout);
}

#[test]
fn exit_codes_follow_the_contract() {
    let spec = example_spec();
    let spec = spec.to_str().unwrap();
    // 0: success.
    assert_eq!(run(&["classify", "--spec", spec]).status.code(), Some(0));
    // 1: unreadable spec.
    assert_eq!(
        run(&["classify", "--spec", "/nonexistent.toml"]).status.code(),
        Some(1)
    );
    // 1: parse error inside an expression.
    assert_eq!(
        run(&["rho", "--spec", spec, "--g", "bogus"]).status.code(),
        Some(1)
    );
    // 2: undecided at the precision ceiling (two enclosure codes of the
    // same geometric point cannot be separated mod 1).
    assert_eq!(
        run(&[
            "measure", "--spec", spec, "--from", "geom:1/3", "--to", "geom:1/3"
        ])
        .status
        .code(),
        Some(2)
    );
    // 3: enumeration budget exhausted.
    assert_eq!(
        run(&[
            "--enum-budget",
            "10",
            "rho",
            "--spec",
            spec,
            "--g",
            "1,0",
            "--estimate",
            "10"
        ])
        .status
        .code(),
        Some(3)
    );
}

#[test]
fn classify_reports_the_trichotomy() {
    let dir = tempfile::tempdir().unwrap().keep();
    let cases = [
        ("rational.toml", "gamma = [\"1/3\"]", "FiniteOrbit"),
        ("minimal.toml", "gamma = [\"sqrt(2) - 1\"]", "Minimal"),
    ];
    for (name, gamma_line, expect) in cases {
        let path = dir.join(name);
        std::fs::write(
            &path,
            format!("schema = \"denjoy-action/v1\"\nd = 1\n{gamma_line}\n"),
        )
        .unwrap();
        let out = run(&["classify", "--spec", path.to_str().unwrap()]);
        assert!(out.status.success());
        let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(report["outputs"]["class"], expect, "{name}");
    }
    let spec = example_spec();
    let out = run(&["classify", "--spec", spec.to_str().unwrap()]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["outputs"]["class"], "Denjoy");
    assert_eq!(report["outputs"]["orbit_count"], 1);
}

#[test]
fn rho_estimate_encloses_the_exact_value() {
    let spec = example_spec();
    let out = run(&[
        "--precision-bits",
        "64",
        "rho",
        "--spec",
        spec.to_str().unwrap(),
        "--g",
        "1,0",
        "--estimate",
        "500",
    ]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["outputs"]["estimate"]["encloses_exact"], true);
}

#[test]
fn ktheory_without_spec_matches_the_worked_example() {
    let out = run(&[
        "ktheory",
        "--d",
        "2",
        "--gamma",
        "sqrt(2)-1",
        "--gamma",
        "sqrt(3)-1",
    ]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let outputs = &report["outputs"];
    assert_eq!(outputs["k0_rank"], 4);
    assert_eq!(outputs["k1_rank"], 4);
    let decimals: Vec<&str> = outputs["trace_pairing"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["decimal"].as_str().unwrap())
        .collect();
    assert_eq!(decimals[0], "1.000000000000000000000000000000");
    assert!(decimals[1].starts_with("0.4142135623730950488"));
    assert!(decimals[2].starts_with("0.7320508075688772935"));
    assert_eq!(decimals[3], "0.000000000000000000000000000000");
}

#[test]
fn table_format_renders() {
    let spec = example_spec();
    let out = run(&[
        "--format",
        "table",
        "classify",
        "--spec",
        spec.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("command  classify"));
    assert!(text.contains("class: Denjoy"));
}
