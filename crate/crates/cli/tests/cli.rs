//! End-to-end tests of the binary: exit codes, output formats, determinism.

use std::process::{Command, Output};

fn picard(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_picard"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn a_number_reference_curve() {
    let out = picard(&["a-number", "--p", "5", "--f", "1,0,0,0,1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("a_number = 1"), "{text}");
    assert!(text.contains("rank_H = 2"), "{text}");
}

#[test]
fn matrix_json_reference_curve() {
    let out = picard(&[
        "matrix",
        "--p",
        "13",
        "--f",
        "1,0,0,0,1",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["matrix"]["convention"], "hasse_witt");
    assert_eq!(
        v["matrix"]["basis"],
        serde_json::json!(["dx/y^2", "x dx/y^2", "dx/y"])
    );
    assert_eq!(
        v["matrix"]["entries"],
        serde_json::json!([[4, 0, 0], [0, 2, 0], [0, 0, 4]])
    );
    assert_eq!(v["rank_H"], 3);
    assert_eq!(v["a_number"], 0);
    assert_eq!(v["p_rank"], 3);
}

#[test]
fn matrix_text_is_rows_of_residues() {
    let out = picard(&["matrix", "--p", "5", "--f", "1,0,0,0,1"]);
    assert_eq!(stdout_of(&out), "0 0 1\n0 0 0\n3 0 0\n");
}

#[test]
fn cartier_convention_is_the_transpose() {
    let out = picard(&[
        "matrix",
        "--p",
        "5",
        "--f",
        "1,0,0,0,1",
        "--convention",
        "cartier",
    ]);
    assert_eq!(stdout_of(&out), "0 0 3\n0 0 0\n1 0 0\n");
}

#[test]
fn singular_curve_exits_3_with_one_error_line() {
    let out = picard(&["a-number", "--p", "5", "--f", "0,0,0,0,1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout_of(&out).is_empty());
    let err = stderr_of(&out);
    assert!(err.starts_with("error: SingularCurve:"), "{err}");
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn degenerate_curve_exits_3() {
    let out = picard(&["a-number", "--p", "5", "--f", "1,1,0,0,5"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr_of(&out).starts_with("error: DegenerateCurve:"));
}

#[test]
fn invalid_field_exits_3() {
    let out = picard(&["p-rank", "--p", "9", "--f", "1,0,0,0,1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr_of(&out).starts_with("error: InvalidField:"));
}

#[test]
fn usage_errors_exit_2() {
    // clap-level: missing required flag
    let out = picard(&["a-number", "--p", "5"]);
    assert_eq!(out.status.code(), Some(2));
    // wrong coefficient count
    let out = picard(&["a-number", "--p", "5", "--f", "1,0,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).starts_with("error: UsageError:"));
    // sweep without a prime selection
    let out = picard(&["sweep", "--trials", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn negative_coefficients_are_reduced() {
    let out = picard(&["a-number", "--p", "5", "--f", "1,0,0,0,-4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("a_number = 1"));
}

#[test]
fn repeated_invocations_are_byte_identical() {
    for format in ["text", "json", "csv"] {
        let args = [
            "matrix",
            "--p",
            "13",
            "--f",
            "1,0,0,0,1",
            "--format",
            format,
        ];
        assert_eq!(stdout_of(&picard(&args)), stdout_of(&picard(&args)));
    }
}

#[test]
fn sweep_json_is_deterministic_and_counterexamples_always_present() {
    let args = [
        "sweep", "--primes", "5,7", "--trials", "4", "--seed", "11", "--format", "json",
    ];
    let a = picard(&args);
    let b = picard(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout_of(&a), stdout_of(&b));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&a)).unwrap();
    assert!(v["counterexamples"].is_array());
    assert!(v["oracle_mismatches"].is_array());
    assert_eq!(v["records"].as_array().unwrap().len(), 8);
}

#[test]
fn sweep_csv_has_the_documented_column_order() {
    let out = picard(&[
        "sweep", "--primes", "5", "--trials", "2", "--seed", "3", "--format", "csv",
    ]);
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "p,trial,f0,f1,f2,f3,f4,p_mod_3,rank_H,a_number,p_rank,predicted_a,matches_theorem"
    );
    assert_eq!(lines.count(), 2);
}

#[test]
fn oracle_check_clean_run_exits_0() {
    let out = picard(&[
        "oracle-check",
        "--primes",
        "5,7",
        "--trials",
        "2",
        "--seed",
        "5",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["mismatches"].as_array().unwrap().len(), 0);
}

#[test]
fn oracle_check_beyond_bound_exits_3() {
    let out = picard(&["oracle-check", "--primes", "103", "--trials", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr_of(&out).starts_with("error: OracleBoundExceeded:"));
}

#[test]
fn output_flag_writes_the_file() {
    let path = std::env::temp_dir().join(format!("picard-cli-test-{}.json", std::process::id()));
    let out = picard(&[
        "matrix",
        "--p",
        "5",
        "--f",
        "1,0,0,0,1",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).is_empty());
    let contents = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&contents).unwrap();
    assert_eq!(v["matrix"]["entries"][2][0], 3);
}
