//! Exit codes and output contracts of the `sullivan` binary.

use std::fs;
use std::path::PathBuf;
use std::process::Output;

use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{}.cdga", env!("CARGO_MANIFEST_DIR"), name)
}

fn run(args: &[&str]) -> Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_sullivan"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// A description file written for one test and removed afterwards.
struct TempFixture {
    path: PathBuf,
}

impl TempFixture {
    fn new(stem: &str, contents: &str) -> Self {
        let path = std::env::temp_dir().join(format!(
            "sullivan-cli-{}-{}.cdga",
            std::process::id(),
            stem
        ));
        fs::write(&path, contents).expect("write temp fixture");
        TempFixture { path }
    }

    fn path(&self) -> &str {
        self.path.to_str().unwrap()
    }
}

impl Drop for TempFixture {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.path);
    }
}

#[test]
fn help_exits_zero_and_missing_subcommand_does_not() {
    let help = run(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("validate"));

    let bare = run(&[]);
    assert_eq!(bare.status.code(), Some(1));
}

#[test]
fn missing_file_is_an_input_error() {
    let out = run(&["validate", "/no/such/place.cdga"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("/no/such/place.cdga"));
}

#[test]
fn syntax_errors_are_input_errors_with_line_numbers() {
    let bad = TempFixture::new("syntax", "gen a 3\n");
    let out = run(&["validate", bad.path()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("line 1"), "{}", stderr(&out));
}

#[test]
fn malformed_construction_fails_validation_but_is_an_input_error_elsewhere() {
    // well-formed directives describing an impossible differential
    let bad = TempFixture::new("mixed-degree", "gen a : 3\ngen b : 3\nd b = -1/2*a*b\n");
    let validate = run(&["validate", bad.path()]);
    assert_eq!(validate.status.code(), Some(2));
    let text = stdout(&validate);
    assert!(text.contains("FAIL"), "{}", text);
    assert!(text.contains("homogeneous"), "{}", text);

    // any computing command treats the same file as unusable input
    let compute = run(&["cohomology", bad.path(), "--cutoff", "6"]);
    assert_eq!(compute.status.code(), Some(1));
}

#[test]
fn law_violations_fail_validation_with_a_witness() {
    let bad = TempFixture::new(
        "mirror-sign",
        "basis a : 3\nbasis b : 3\nbasis c : 6\nmul a b = c\nmul b a = c\n",
    );
    let out = run(&["validate", bad.path(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["result"]["valid"], Value::Bool(false));
    let laws = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "laws")
        .expect("laws check");
    assert_eq!(laws["pass"], Value::Bool(false));
    let detail = laws["detail"].as_str().unwrap();
    assert!(detail.contains("graded_commutativity"), "{}", detail);
    assert!(detail.contains("a*b"), "{}", detail);
}

#[test]
fn undecided_formality_exits_three() {
    let out = run(&["formality", &fixture("CP2"), "--cutoff", "8", "--format", "json"]);
    assert_eq!(out.status.code(), Some(3));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["result"]["formal"], Value::Null);
    // both detectors ran and found nothing
    let names: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"massey_products"));
    assert!(names.contains(&"homotopy_comparison"));
}

#[test]
fn json_and_table_report_the_same_numbers() {
    let json_out = run(&["cohomology", &fixture("S4_model"), "--cutoff", "9", "--format", "json"]);
    assert_eq!(json_out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&json_out.stdout).unwrap();
    let from_json: Vec<u64> = report["result"]["ranks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();

    let table_out = run(&["cohomology", &fixture("S4_model"), "--cutoff", "9"]);
    assert_eq!(table_out.status.code(), Some(0));
    let text = stdout(&table_out);
    let rank_line = text
        .lines()
        .find(|l| l.starts_with("rank"))
        .expect("rank row in table output");
    let from_table: Vec<u64> = rank_line
        .split_whitespace()
        .skip(1)
        .map(|t| t.parse().unwrap())
        .collect();
    assert_eq!(from_json, from_table);
}

#[test]
fn the_monomial_budget_is_enforced() {
    let out = run(&["cohomology", &fixture("massey"), "--cutoff", "12", "--budget", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("budget exceeded"), "{}", stderr(&out));
}

#[test]
fn explicit_massey_arguments_must_come_together() {
    let out = run(&["massey", &fixture("massey"), "--cutoff", "8", "--x", "v"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        stderr(&out).contains("must be given together"),
        "{}",
        stderr(&out)
    );
}
