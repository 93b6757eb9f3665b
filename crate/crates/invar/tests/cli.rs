//! End-to-end checks of the command-line binary: exit codes, stream
//! separation, determinism, and format handling.

use std::process::{Command, Output};

fn invar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn gen_json_has_expected_counts() {
    let out = invar(&["gen", "--group", "un", "--n", "2", "--p", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["generators"].as_array().unwrap().len(), 5);
    assert_eq!(v["relations"].as_array().unwrap().len(), 1);
}

#[test]
fn gen_rejects_general_linear() {
    let out = invar(&["gen", "--group", "gln", "--n", "2", "--p", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).is_empty());
}

#[test]
fn gen_trivial_case_warns_on_stderr() {
    let out = invar(&["gen", "--group", "un", "--n", "1", "--p", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("warning"));
    assert!(stdout(&out).contains("free"));
}

#[test]
fn missing_required_flag_is_usage_error() {
    let out = invar(&["gen", "--group", "un", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_passes_and_reports_per_relation() {
    let out = invar(&["verify", "--group", "bn", "--n", "2", "--p", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("kernel Rt1 PASS"));
    assert!(text.trim_end().ends_with("PASS"));
}

#[test]
fn verify_rejects_corrupted_input() {
    let dir = std::env::temp_dir();
    let path = dir.join("invar-corrupt-presentation.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = invar(&[
        "verify",
        "--group",
        "un",
        "--n",
        "2",
        "--p",
        "2",
        "--input",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn verify_round_trips_generated_presentation() {
    let dir = std::env::temp_dir();
    let path = dir.join("invar-roundtrip-presentation.json");
    let gen = invar(&[
        "gen", "--group", "bn", "--n", "1", "--p", "3", "--format", "json", "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(gen.status.code(), Some(0));
    let out = invar(&[
        "verify",
        "--group",
        "bn",
        "--n",
        "1",
        "--p",
        "3",
        "--input",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
}

#[test]
fn dims_is_deterministic_and_csv() {
    let args = ["dims", "--group", "un", "--n", "2", "--p", "2", "--cutoff", "5"];
    let a = invar(&args);
    let b = invar(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("d,e,dim\n"));
    assert!(text.contains("0,0,1"));
}

#[test]
fn hilbert_table_matches_dims_table() {
    let dims = invar(&["dims", "--group", "bn", "--n", "2", "--p", "2", "--cutoff", "6"]);
    let hilb = invar(&[
        "hilbert", "--group", "bn", "--n", "2", "--p", "2", "--cutoff", "6", "--format", "csv",
    ]);
    assert_eq!(dims.status.code(), Some(0));
    assert_eq!(hilb.status.code(), Some(0));
    let mut by_cell = std::collections::BTreeMap::new();
    for line in stdout(&hilb).lines().skip(1) {
        let parts: Vec<&str> = line.split(',').collect();
        by_cell.insert(
            (parts[0].to_string(), parts[1].to_string()),
            parts[2].to_string(),
        );
    }
    for line in stdout(&dims).lines().skip(1) {
        let parts: Vec<&str> = line.split(',').collect();
        let key = (parts[0].to_string(), parts[1].to_string());
        assert_eq!(by_cell.get(&key), Some(&parts[2].to_string()), "cell {key:?}");
    }
}

#[test]
fn check_conjecture_small_case() {
    let out = invar(&["check-conjecture", "--n", "2", "--p", "2", "--cutoff", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("PASS"));
}

#[test]
fn fuzz_det_reports_seed_and_passes() {
    let out = invar(&["fuzz-det", "--n", "3", "--trials", "5", "--seed", "42"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("seed 42"));
    assert!(text.contains("0 failures"));
}

#[test]
fn sl2_example_reports_orbit() {
    let out = invar(&["sl2-example", "--cutoff", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("orbit length of the pairing form: 6"));
}

#[test]
fn gen_cas_script_shape() {
    let out = invar(&["gen", "--group", "un", "--n", "3", "--p", "2", "--format", "cas"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("ring R"));
    assert!(text.contains("ideal I"));
}
