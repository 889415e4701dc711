//! End-to-end tests of the `moonorb` binary: documented output shapes,
//! exit codes, catalog overrides, and byte-stable formatting.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn moonorb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moonorb"))
        .args(args)
        .env_remove("MOONORB_CATALOG")
        .output()
        .expect("binary runs")
}

fn moonorb_with_catalog(args: &[&str], catalog: &str, tag: &str) -> Output {
    let path: PathBuf = std::env::temp_dir().join(format!("moonorb_cli_{}.txt", tag));
    std::fs::write(&path, catalog).expect("temp catalog written");
    Command::new(env!("CARGO_BIN_EXE_moonorb"))
        .args(args)
        .env("MOONORB_CATALOG", &path)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

#[test]
fn expand_prints_the_documented_listing() {
    let out = moonorb(&["expand", "--eta", "1^24/2^24", "--order", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(
        text.starts_with("q^-1, -24, 276, -2048, 11202"),
        "unexpected listing: {}",
        text
    );
}

#[test]
fn expand_rejects_malformed_quotients() {
    let out = moonorb(&["expand", "--eta", "1^24/nope", "--order", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).starts_with("error:"));
}

#[test]
fn expand_rejects_an_order_below_the_pole() {
    let out = moonorb(&["expand", "--eta", "1^24/2^24", "--order=-3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("leading exponent"));
}

#[test]
fn expand_json_and_csv_carry_the_same_coefficients() {
    let json_out = moonorb(&["expand", "--eta", "1^24/2^24", "--order", "3", "--format", "json"]);
    let csv_out = moonorb(&["expand", "--eta", "1^24/2^24", "--order", "3", "--format", "csv"]);
    assert_eq!(json_out.status.code(), Some(0));
    assert_eq!(csv_out.status.code(), Some(0));

    let v: Value = serde_json::from_str(&stdout_of(&json_out)).expect("valid json");
    assert_eq!(v["eta"], "1^24/2^24");
    let terms = v["terms"].as_array().expect("terms array");

    let csv = stdout_of(&csv_out);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("exponent,coefficient"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), terms.len());
    for (row, term) in rows.iter().zip(terms) {
        let (e, c) = row.split_once(',').expect("two csv columns");
        assert_eq!(term["exponent"], e);
        assert_eq!(term["coefficient"], c);
    }
}

#[test]
fn float_flag_adds_decimal_annotations() {
    let plain = stdout_of(&moonorb(&["expand", "--eta", "1^24/2^24", "--order", "2"]));
    let noted = stdout_of(&moonorb(&[
        "expand", "--eta", "1^24/2^24", "--order", "2", "--float",
    ]));
    assert!(!plain.contains("(~"));
    assert!(noted.contains("(~-24)"), "missing annotation: {}", noted);
}

#[test]
fn conditions_reports_the_order_two_frame() {
    let out = moonorb(&["conditions", "--frame", "2^24/1^24"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("fixed-point-free: yes"));
    assert!(text.contains("E0 = 1/2"));
    assert!(text.contains("anomaly-free: yes"));
}

#[test]
fn conditions_fails_on_a_frame_with_fixed_points() {
    let out = moonorb(&["conditions", "--frame", "1^24"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).contains("fixed-point-free: no"));
    assert!(stderr_of(&out).contains("FAIL: conditions 1^24"));
}

#[test]
fn verify_table_passes_every_row() {
    let out = moonorb(&["verify", "table", "--all"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 38);
    for line in &lines {
        assert!(line.ends_with(" PASS"), "failing line: {}", line);
    }
}

#[test]
fn a_wrong_override_row_fails_the_check() {
    // Parses cleanly (counts and level are consistent) but the stored
    // root column disagrees with the eta quotient.
    let out = moonorb_with_catalog(
        &["verify", "table", "--all"],
        "2B | 1 2 | 23^1, 1^1 | 2a | 1A_1\n",
        "wrong_row",
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).contains("2B FAIL"));
    assert!(stderr_of(&out).contains("table row 2B"));
}

#[test]
fn a_corrupt_override_row_is_a_parse_error() {
    let out = moonorb_with_catalog(
        &["verify", "table", "--all"],
        "2B | 1 2 | 24^1, 0^1\n",
        "corrupt_row",
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("catalog override"));
}

#[test]
fn table_json_is_valid_and_byte_stable() {
    let first = moonorb(&["table", "--all", "--format", "json"]);
    let second = moonorb(&["table", "--all", "--format", "json"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout, "output is not byte-stable");

    let v: Value = serde_json::from_str(&stdout_of(&first)).expect("valid json");
    let rows = v.as_array().expect("row array");
    assert_eq!(rows.len(), 38);
    assert_eq!(rows[0]["name"], "2B");
    assert_eq!(rows[0]["eta"], "1^24/2^24");
}

#[test]
fn table_rejects_an_unknown_class() {
    let out = moonorb(&["table", "--class", "9Z"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("unknown class"));
}

#[test]
fn identity_checks_pass_on_small_boxes() {
    let knz = moonorb(&["verify", "knz", "--bidegree", "2,2"]);
    assert_eq!(knz.status.code(), Some(0));
    assert!(stdout_of(&knz).contains("knz (2,2) PASS"));

    let denom = moonorb(&[
        "verify", "denom", "--class", "2B", "--bidegree", "2,2", "--switched", "--twisted",
    ]);
    assert_eq!(denom.status.code(), Some(0));
    let text = stdout_of(&denom);
    assert!(text.contains("denom 2B (2,2) PASS"));
    assert!(text.contains("denom-switched 2B (2,2) PASS"));
    assert!(text.contains("denom-twisted 2B (2,2) PASS"));
}

#[test]
fn twisted_variant_needs_an_even_p_bound() {
    let out = moonorb(&["verify", "denom", "--class", "2B", "--bidegree", "3,2", "--twisted"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("even p-bound"));
}

#[test]
fn hecke_check_prints_the_polynomial() {
    let out = moonorb(&["verify", "hecke", "--pair", "g^1.h^1", "--order", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("polynomial:"), "missing polynomial: {}", text);
    assert!(text.contains("hecke 2B g^1.h^1 n=3 PASS"));
}

#[test]
fn bad_pair_grammar_is_a_parse_error() {
    let out = moonorb(&["verify", "hecke", "--pair", "g1.h2", "--order", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("g^i.h^j"));
}

#[test]
fn search_confirms_uniqueness_at_the_documented_bound() {
    let out = moonorb(&["search", "--class", "2B", "--bound", "30", "--order", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("1^24/2^24"));
    assert!(text.contains("unique: yes"));
}

#[test]
fn search_reports_failure_when_the_bound_is_too_small() {
    // Exponent bound 10 excludes 1^24/2^24 itself, so nothing matches.
    let out = moonorb(&["search", "--class", "2B", "--bound", "10", "--order", "10"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).contains("unique: no"));
    assert!(stderr_of(&out).contains("search 2B"));
}

#[test]
fn audit_covers_every_residue_of_the_order() {
    let out = moonorb(&["audit", "--order", "6", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,t,modulus,subgroup_order,pass"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 6);
    for (t, row) in rows.iter().enumerate() {
        assert!(row.starts_with(&format!("6,{},", t)));
        assert!(row.ends_with(",true"));
    }
}

#[test]
fn audit_json_parses_and_carries_the_checks() {
    let out = moonorb(&["audit", "--order", "4", "--anomaly", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout_of(&out)).expect("valid json");
    let audits = v.as_array().expect("audit array");
    assert_eq!(audits.len(), 1);
    assert_eq!(audits[0]["data"]["n"], 4);
    assert_eq!(audits[0]["data"]["t"], 1);
    assert_eq!(audits[0]["data"]["modulus"], 16);
    let checks = audits[0]["checks"].as_array().expect("check array");
    assert!(!checks.is_empty());
    for check in checks {
        assert_eq!(check["pass"], true);
    }
}

#[test]
fn audit_rejects_a_residue_outside_the_order() {
    let out = moonorb(&["audit", "--order", "4", "--anomaly", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("not a residue"));
}
