//! End-to-end runs of the installed binary: exit codes, output shapes, and
//! determinism, driven through real problem files.

use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matderiv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 output")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

/// Writes an inline problem file into `dir` and returns its path.
fn problem(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).expect("temp file writes");
    path
}

const T2_Z2_ALGEBRA: &str =
    r#"{"ring": {"type": "Zmod", "m": 2}, "algebra": {"type": "upper", "n": 2}}"#;
const M2_Z3_ALGEBRA: &str =
    r#"{"ring": {"type": "Zmod", "m": 3}, "algebra": {"type": "full", "n": 2}}"#;
const EX1_ALGEBRA: &str = r#"{"ring": {"type": "Zmod", "m": 2}, "algebra": {"type": "pattern", "N": 4, "basis": [[[1,1],[2,2]],[[3,3],[4,4]],[[1,2]],[[1,3]],[[1,4]],[[2,4]],[[3,4]]]}}"#;

#[test]
fn classify_counterexample_fixture() {
    let input = fixture("example1.json");
    let input = input.to_str().unwrap();

    let jordan = run(&["classify", "--input", input, "--require", "jordan"]);
    assert_eq!(code(&jordan), 0, "{}", stderr(&jordan));
    let text = stdout(&jordan);
    assert!(text.contains("\"jordan\""));
    assert!(text.contains("\"holds\": true"));

    let deriv = run(&["classify", "--input", input, "--require", "derivation"]);
    assert_eq!(code(&deriv), 1);
    // The failing pair ships as a replayable certificate.
    assert!(stdout(&deriv).contains("\"check\": \"derivation_pair\""));

    // Identical runs produce identical bytes.
    let again = run(&["classify", "--input", input, "--require", "jordan"]);
    assert_eq!(jordan.stdout, again.stdout);
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let truncated = problem(&dir, "broken.json", r#"{"ring": {"type": "Zmod", "#);
    let out = run(&["classify", "--input", truncated.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("error:"));

    let no_map = problem(&dir, "nomap.json", T2_Z2_ALGEBRA);
    let out = run(&["classify", "--input", no_map.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("map"));

    let missing = run(&["classify"]);
    assert_eq!(code(&missing), 2);

    let unknown_flag = run(&["classify", "--frobnicate"]);
    assert_eq!(code(&unknown_flag), 2);
}

#[test]
fn witness_triangular_fixture() {
    let input = fixture("t2_int_witness.json");
    let out = run(&["witness", "--input", input.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("element: -1*e_22"));
    assert!(text.contains("coordinates: [0,0,-1]"));
    assert!(text.contains("verified: true"));

    // The alternative witness from the worked example checks out too.
    let checked = run(&[
        "witness",
        "--input",
        input.to_str().unwrap(),
        "--check-witness",
        "[1,0,0]",
    ]);
    assert_eq!(code(&checked), 0);
    let text = stdout(&checked);
    assert!(text.contains("candidate: e_11"));
    assert!(text.contains("candidate verified: true"));
    assert!(text.contains("difference from synthesized witness is central: true"));

    // A non-witness is reported and fails the run.
    let bad = run(&[
        "witness",
        "--input",
        input.to_str().unwrap(),
        "--check-witness",
        "[0,1,0]",
    ]);
    assert_eq!(code(&bad), 1);
    assert!(stdout(&bad).contains("candidate verified: false"));
}

#[test]
fn witness_full_fixture_confirms_paper_candidate() {
    let input = fixture("m4_int_witness.json");
    let out = run(&[
        "witness",
        "--input",
        input.to_str().unwrap(),
        "--check-witness",
        "[1,0,0,0,0,0,1,0,0,0,0,0,0,0,0,0]",
        "--json",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["witness"]["verified"], serde_json::json!(true));
    assert_eq!(v["candidate"]["verified"], serde_json::json!(true));
    assert_eq!(
        v["candidate"]["difference_central"],
        serde_json::json!(true)
    );
    assert_eq!(
        v["candidate"]["element"]["pretty"],
        serde_json::json!("e_11 + e_23")
    );
}

#[test]
fn witness_zero_map_is_zero() {
    let dir = TempDir::new().unwrap();
    let zero = problem(
        &dir,
        "zero.json",
        r#"{"ring": {"type": "Z"}, "algebra": {"type": "full", "n": 3},
            "map": {"images": [[0,0,0,0,0,0,0,0,0],[0,0,0,0,0,0,0,0,0],[0,0,0,0,0,0,0,0,0],
                               [0,0,0,0,0,0,0,0,0],[0,0,0,0,0,0,0,0,0],[0,0,0,0,0,0,0,0,0],
                               [0,0,0,0,0,0,0,0,0],[0,0,0,0,0,0,0,0,0],[0,0,0,0,0,0,0,0,0]]}}"#,
    );
    let out = run(&["witness", "--input", zero.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("element: 0"));
}

#[test]
fn witness_refusals() {
    // Pattern algebras are outside both formulas.
    let out = run(&[
        "witness",
        "--input",
        fixture("example1.json").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("pattern basis"));
    assert!(stdout(&out).is_empty());

    // Maps that are not jordan derivations are refused too.
    let dir = TempDir::new().unwrap();
    let not_jordan = problem(
        &dir,
        "notjordan.json",
        r#"{"ring": {"type": "Z"}, "algebra": {"type": "upper", "n": 2},
            "map": {"images": [[1,0,0],[0,0,0],[0,0,0]]}}"#,
    );
    let out = run(&["witness", "--input", not_jordan.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("refused"));
}

#[test]
fn identities_cover_both_suites() {
    let full = run(&[
        "identities",
        "--input",
        fixture("m4_int_witness.json").to_str().unwrap(),
    ]);
    assert_eq!(code(&full), 0);
    let text = stdout(&full);
    assert!(text.contains("suite: jordan + derivation families"));
    assert_eq!(text.matches(": pass").count(), 8);

    let tri = run(&[
        "identities",
        "--input",
        fixture("t2_int_witness.json").to_str().unwrap(),
    ]);
    assert_eq!(code(&tri), 0);
    assert_eq!(stdout(&tri).matches(": pass").count(), 4);

    // Pattern algebras are outside the suite but not an error.
    let pattern = run(&[
        "identities",
        "--input",
        fixture("example1.json").to_str().unwrap(),
    ]);
    assert_eq!(code(&pattern), 0);
    assert!(stdout(&pattern).contains("not applicable"));

    // A non-jordan map has no table to check; that is a failure.
    let dir = TempDir::new().unwrap();
    let not_jordan = problem(
        &dir,
        "notjordan.json",
        r#"{"ring": {"type": "Z"}, "algebra": {"type": "upper", "n": 2},
            "map": {"images": [[1,0,0],[0,0,0],[0,0,0]]}}"#,
    );
    let out = run(&["identities", "--input", not_jordan.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
}

#[test]
fn space_verdicts_match_the_theorems() {
    let dir = TempDir::new().unwrap();

    let t2 = problem(&dir, "t2.json", T2_Z2_ALGEBRA);
    let out = run(&["space", "--input", t2.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("jordan == derivation: true"));
    assert!(text.contains("jordan == inner: true"));

    // The pattern algebra shows the gap.
    let ex1 = problem(&dir, "ex1.json", EX1_ALGEBRA);
    let out = run(&[
        "space",
        "--input",
        ex1.to_str().unwrap(),
        "--method",
        "kernel",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("jordan == derivation: false"));
    assert!(text.contains("jordan == inner: false"));
}

#[test]
fn space_methods_agree() {
    let dir = TempDir::new().unwrap();
    let m2 = problem(&dir, "m2.json", M2_Z3_ALGEBRA);
    let path = m2.to_str().unwrap();

    let kernel = run(&[
        "space", "--input", path, "--kind", "jordan", "--method", "kernel", "--json",
    ]);
    let enumerated = run(&[
        "space",
        "--input",
        path,
        "--kind",
        "jordan",
        "--method",
        "enumerate",
        "--json",
    ]);
    assert_eq!(code(&kernel), 0);
    assert_eq!(code(&enumerated), 0);
    let k: serde_json::Value = serde_json::from_str(&stdout(&kernel)).unwrap();
    let e: serde_json::Value = serde_json::from_str(&stdout(&enumerated)).unwrap();
    assert_eq!(k["count"], e["count"]);
    assert_eq!(k["representation"], serde_json::json!("kernel basis"));
    assert_eq!(e["representation"], serde_json::json!("explicit list"));

    // Identical requests give identical bytes.
    let again = run(&[
        "space", "--input", path, "--kind", "jordan", "--method", "kernel", "--json",
    ]);
    assert_eq!(kernel.stdout, again.stdout);
}

#[test]
fn space_listing_expands_members() {
    let dir = TempDir::new().unwrap();
    let t2 = problem(&dir, "t2.json", T2_Z2_ALGEBRA);
    let out = run(&[
        "space",
        "--input",
        t2.to_str().unwrap(),
        "--kind",
        "antiderivation",
        "--list",
        "--json",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["count"], serde_json::json!(2));
    assert_eq!(v["members"].as_array().unwrap().len(), 2);
}

#[test]
fn space_over_the_integers() {
    let dir = TempDir::new().unwrap();
    let t2z = problem(
        &dir,
        "t2z.json",
        r#"{"ring": {"type": "Z"}, "algebra": {"type": "upper", "n": 2}}"#,
    );
    let path = t2z.to_str().unwrap();

    // Class spaces need a finite ring.
    let out = run(&["space", "--input", path, "--kind", "jordan"]);
    assert_eq!(code(&out), 2);

    // Inner generators are still available.
    let out = run(&["space", "--input", path, "--kind", "inner", "--list"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("generators"));
}

#[test]
fn paper_examples_suite() {
    let out = run(&["paper-examples"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(text.matches(": PASS").count(), 16);
    assert!(!text.contains("FAIL"));
    assert!(text.contains("all examples reproduced"));

    let json = run(&["paper-examples", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(v["pass"], serde_json::json!(true));
    assert_eq!(v["examples"].as_array().unwrap().len(), 3);

    // The self-test proves a broken expectation actually fails the run.
    let corrupt = run(&["paper-examples", "--corrupt"]);
    assert_eq!(code(&corrupt), 1);
    assert!(stdout(&corrupt).contains("FAIL"));
}
