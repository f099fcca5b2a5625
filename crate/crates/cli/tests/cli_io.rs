//! Black-box tests of the command-line interface: output formats, exit
//! codes, and determinism.

use std::process::{Command, Output};

fn mulaut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mulaut"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = mulaut(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8")
}

fn exit_code(args: &[&str]) -> i32 {
    mulaut(args).status.code().expect("exit code")
}

#[test]
fn count_text_output() {
    assert_eq!(stdout(&["count", "--p", "2", "--e", "5"]), "unit: 16\nmonoid: 64\n");
    assert_eq!(stdout(&["count", "--p", "3", "--e", "1"]), "unit: 1\nmonoid: 1\n");
}

#[test]
fn count_oracle_matches() {
    let out = stdout(&["count", "--p", "5", "--e", "2", "--oracle"]);
    assert!(out.contains("unit: 8"));
    assert!(out.contains("monoid: 32"));
    assert!(out.contains("oracle-match: true"));
}

#[test]
fn count_json_fields() {
    let out = stdout(&["count", "--p", "2", "--e", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).expect("json");
    assert_eq!(v["unit_aut_order"], 8);
    assert_eq!(v["monoid_aut_order"], 16);
}

#[test]
fn count_csv() {
    assert_eq!(
        stdout(&["count", "--p", "2", "--e", "5", "--format", "csv"]),
        "p,e,unit,monoid\n2,5,16,64\n"
    );
}

#[test]
fn list_line_counts_match_count() {
    let lines = stdout(&["list", "--p", "2", "--e", "3", "--which", "units"]);
    assert_eq!(lines.lines().count(), 6);
    let lines = stdout(&["list", "--p", "2", "--e", "4", "--which", "monoid"]);
    assert_eq!(lines.lines().count(), 16);
}

#[test]
fn list_identity_flagged() {
    let lines = stdout(&["list", "--p", "3", "--e", "2", "--which", "monoid"]);
    let flagged: Vec<&str> = lines.lines().filter(|l| l.contains("\"id\":true")).collect();
    assert_eq!(flagged.len(), 1);
    let first: serde_json::Value = serde_json::from_str(lines.lines().next().unwrap()).unwrap();
    assert_eq!(first["id"], serde_json::json!(true));
}

#[test]
fn list_full_map_respects_bound() {
    let lines = stdout(&["list", "--p", "2", "--e", "4", "--which", "units", "--bound", "8"]);
    assert!(!lines.contains("full_map"));
    let lines = stdout(&["list", "--p", "2", "--e", "4", "--which", "units"]);
    assert!(lines.contains("full_map"));
}

#[test]
fn structure_reports_verify() {
    let out = stdout(&["structure", "--p", "2", "--e", "4"]);
    assert!(out.contains("D4"));
    let out = stdout(&["structure", "--p", "2", "--e", "3"]);
    assert!(out.contains("Z/2 x Z/2"));
    let out = stdout(&["structure", "--p", "2", "--e", "6"]);
    assert!(out.contains("Z/2 x (D4 o Z/2^2)"));
    let out = stdout(&["structure", "--p", "2", "--e", "6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).expect("json");
    assert_eq!(v["verified"], serde_json::json!(true));
}

#[test]
fn ring_identity_is_standard_addition() {
    let out = stdout(&["ring", "--p", "2", "--e", "3", "--phi", "0"]);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), ",0,1,2,3,4,5,6,7");
    assert_eq!(lines.next().unwrap(), "0,0,1,2,3,4,5,6,7");
    assert_eq!(lines.next().unwrap(), "1,1,2,3,4,5,6,7,0");
}

#[test]
fn ring_transported_entry() {
    // index 2 in r-major order is ψ_{3, id}; its table has 2 ⊕ 2 = 4
    let out = stdout(&["ring", "--p", "2", "--e", "3", "--phi", "2"]);
    let row: Vec<&str> = out.lines().nth(3).unwrap().split(',').collect();
    assert_eq!(row[0], "2");
    assert_eq!(row[3], "4");
}

#[test]
fn ring_index_out_of_range() {
    assert_eq!(exit_code(&["ring", "--p", "2", "--e", "3", "--phi", "99"]), 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(exit_code(&["count", "--p", "6", "--e", "1"]), 2); // not prime
    assert_eq!(exit_code(&["count", "--e", "1"]), 2); // missing --p
    assert_eq!(exit_code(&["count", "--p", "3", "--e", "0"]), 2);
    assert_eq!(exit_code(&["verify", "--suite", "bogus"]), 2);
    assert_eq!(exit_code(&["order", "--p", "2", "--e", "3", "--a", "4"]), 2); // non-unit
    assert_eq!(exit_code(&["nonsense"]), 2); // clap usage error
}

#[test]
fn order_and_decompose() {
    assert_eq!(stdout(&["order", "--p", "2", "--e", "5", "--a", "7"]), "order: 4\n");
    let out = stdout(&["decompose", "--p", "2", "--e", "5", "--a", "7", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).expect("json");
    assert_eq!(v["valuation"], 0);
    assert_eq!(v["unit_coordinates"]["v"], 1);
    assert_eq!(v["unit_coordinates"]["w"], 2);
    let out = stdout(&["decompose", "--p", "3", "--e", "2", "--a", "12"]);
    assert!(out.contains("3^1 * 1"));
}

#[test]
fn verify_single_context_structure() {
    let out = stdout(&["verify", "--p", "2", "--e", "5", "--suite", "structure"]);
    let v: serde_json::Value = serde_json::from_str(&out).expect("json");
    assert_eq!(v["suite"], "structure");
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
    let center = v["cases"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "center_size_formula")
        .expect("center case present");
    assert_eq!(center["detail"]["center_size"], 4);
}

#[test]
fn verify_small_sweep_passes() {
    let out = mulaut(&["verify", "--suite", "arith", "--bound", "32"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn identical_flags_identical_output() {
    for args in [
        vec!["list", "--p", "2", "--e", "4", "--which", "monoid"],
        vec!["verify", "--p", "2", "--e", "4", "--suite", "unit-aut"],
        vec!["structure", "--p", "3", "--e", "2", "--format", "json"],
    ] {
        let a = mulaut(&args);
        let b = mulaut(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
