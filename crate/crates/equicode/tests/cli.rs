//! End-to-end checks of the command-line front end: exit codes, the
//! bundled example, and byte-determinism of seeded runs.

use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equicode"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn z4_spec_file() -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(
        f,
        r#"{{"modulus": 4, "length": 4, "group": ["(1 2 3)(4)"],
            "generators": [[1,1,1,3],[1,3,1,1],[0,0,2,2]]}}"#
    )
    .unwrap();
    f
}

#[test]
fn paper_example_passes_and_prints_the_values() {
    let out = run(&["paper-example"]);
    assert!(out.status.success(), "{:?}", out);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("C theta = {0000, 1113, 2222, 3331}"));
    assert!(text.contains("dual_G(C theta) = {0000, 1111, 2222, 3333}"));
    assert!(text.contains("M = diag(3, 3, 3, 1)"));
    assert!(text.contains("W = x^2 + 3*y^2"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn paper_example_json_mode() {
    let out = run(&["--out", "json", "paper-example"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["values_pass"], serde_json::Value::Bool(true));
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn subcommands_run_on_a_spec_file() {
    let f = z4_spec_file();
    let path = f.path().to_str().unwrap();

    let out = run(&["orbits", path]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("diag(3, 3, 3, 1)"));

    let out = run(&["enum", "--flavor", "hamming", path]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "x^2 + 3*y^2");

    let out = run(&["enum", "--flavor", "cwe", path]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        "x0^2 + 2*x1*x3 + x2^2"
    );

    let out = run(&["mw-check", "--flavor", "jacobi", "--t-set", "1", path]);
    assert!(out.status.success());

    let out = run(&["hayden-check", path]);
    assert!(out.status.success());

    let out = run(&["orbit-matrix-check", path]);
    assert!(out.status.success());

    let out = run(&["theta", "--genus", "2", "--cutoff", "4", path]);
    assert!(out.status.success());

    let out = run(&["jacobi-theta", "--t-set", "1,2", "--cutoff", "4", path]);
    assert!(out.status.success());

    let out = run(&["jacobi-formula", "--tol", "1e-9", path]);
    assert!(out.status.success());
}

#[test]
fn seeded_sweeps_are_byte_deterministic() {
    let a = run(&["mw-check", "--flavor", "cwe", "--seed", "7", "--count", "4"]);
    let b = run(&["mw-check", "--flavor", "cwe", "--seed", "7", "--count", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["mw-check", "--flavor", "cwe", "--seed", "8", "--count", "4"]);
    assert!(c.status.success());
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn parse_errors_exit_with_two() {
    // unknown flag
    let out = run(&["enum", "--flavor", "nonsense", "/dev/null"]);
    assert_eq!(out.status.code(), Some(2));

    // malformed spec file
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "{{ not json").unwrap();
    let out = run(&["orbits", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // subgroup order not invertible in the ring
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(
        f,
        r#"{{"modulus": 2, "length": 4, "group": ["(1 2)"], "generators": [[1,1,0,0]]}}"#
    )
    .unwrap();
    let out = run(&["project", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumeration_guard_respects_the_environment_override() {
    let f = z4_spec_file();
    let path = f.path().to_str().unwrap();
    // 4^4 = 256 exceeds a guard of 100, so the dual scan must refuse
    let out = Command::new(env!("CARGO_BIN_EXE_equicode"))
        .env("EQUICODE_MAX_ENUM", "100")
        .args(["dual", path])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("exceeds the bound 100"), "{}", err);

    let out = Command::new(env!("CARGO_BIN_EXE_equicode"))
        .env("EQUICODE_MAX_ENUM", "1000")
        .args(["dual", path])
        .output()
        .unwrap();
    assert!(out.status.success());
}
