use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frameposet")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn machine(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "machine"];
    full.extend_from_slice(args);
    let o = run(&full);
    (o.status.code().unwrap(), serde_json::from_str(&stdout(&o)).expect("machine output is JSON"))
}

fn p(name: &str) -> String {
    corpus(name).to_str().unwrap().to_string()
}

#[test]
fn poset_of_e1e2e2() {
    let o = run(&["poset", &p("e1e2e2.frame")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("members (3): {} {1,2} {1,3}"));
    let (code, v) = machine(&["poset", &p("e1e2e2.frame")]);
    assert_eq!(code, 0);
    assert_eq!(v["members"], serde_json::json!([[], [1, 2], [1, 3]]));
}

#[test]
fn characteristic_of_e1e1e2() {
    let (code, v) = machine(&["char", &p("e1e1e2.frame")]);
    assert_eq!(code, 0);
    assert_eq!(v["characteristic"], serde_json::json!([1, 1, 2]));
    assert_eq!(v["uniform"], Value::Bool(false));
    let o = run(&["char", &p("e1e1e2.frame")]);
    assert!(stdout(&o).contains("characteristic: (1, 1, 2)"));
}

#[test]
fn empty_cover_of_square() {
    let (_, v) = machine(&["ec", &p("square.frame")]);
    assert_eq!(v["empty_cover"], serde_json::json!([[1, 2], [2, 3], [1, 4], [3, 4]]));
    let (_, v) = machine(&["ec", &p("square.poset")]);
    assert_eq!(v["empty_cover"], serde_json::json!([[1, 2], [2, 3], [1, 4], [3, 4]]));
}

#[test]
fn nested_poset_fails_check_with_rules() {
    let (code, v) = machine(&["poset-check", &p("nested.poset")]);
    assert_eq!(code, 1);
    let rules: Vec<&str> = v["violations"].as_array().unwrap().iter().map(|x| x["rule"].as_str().unwrap()).collect();
    assert!(rules.contains(&"disjoint-decomposition"));
    assert!(rules.contains(&"empty-cover-closure"));
    let (code, _) = machine(&["poset-check", &p("square.poset")]);
    assert_eq!(code, 0);
}

#[test]
fn realize_corpus_posets() {
    let (code, v) = machine(&["realize-r2", &p("square.poset")]);
    assert_eq!(code, 0);
    assert_eq!(v["weights"], serde_json::json!([1, -1, 1, -1]));
    let (code, v) = machine(&["realize-r2", &p("nested.poset")]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "fails-necessary-check");
}

#[test]
fn primes_and_non_tight() {
    let (code, v) = machine(&["primes", &p("square.frame")]);
    assert_eq!(code, 0);
    assert_eq!(v["primes"], serde_json::json!([[1, 2], [3, 4]]));
    let (code, _) = machine(&["primes", &p("e1e1e2.frame")]);
    assert_eq!(code, 1);
}

#[test]
fn dual_exports_full_precision() {
    let (code, v) = machine(&["dual", &p("e1e1e2.frame")]);
    assert_eq!(code, 0);
    assert_eq!(v["columns"], serde_json::json!([[0.5, 0], [0.5, 0], [0, 1]]));
    let o = run(&["--format", "machine", "dual", &p("e1e1e2.frame")]);
    assert!(stdout(&o).contains("0.70710678118654746"));
}

#[test]
fn tight_dual_verdicts() {
    let (code, v) = machine(&["tight-dual", &p("square.frame"), "--alpha", "0.5"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "alternate");
    assert!((v["predicted_bound"].as_f64().unwrap() - 0.75).abs() < 1e-15);
    let (code, v) = machine(&["tight-dual", &p("e1e1e2.frame")]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "not-tight");
}

#[test]
fn iso_verdicts() {
    let (code, _) = machine(&["iso", &p("dual_mismatch.frame"), "--tol", "1e-12"]);
    assert_eq!(code, 1);
    let (code, v) = machine(&["iso", &p("e1e2e2.poset"), &p("e1e2e2.frame")]);
    assert_eq!(code, 0);
    assert_eq!(v["permutation"], serde_json::json!([1, 2, 3]));
    let (code, _) = machine(&["iso", &p("e1e2e2.poset"), &p("square.poset")]);
    assert_eq!(code, 1);
}

#[test]
fn lift_dual_rejects_non_duals() {
    let dir = std::env::temp_dir().join(format!("frameposet-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.frame");
    let bad = dir.join("bad.frame");
    std::fs::write(&good, r#"{"field":"real","n":2,"vectors":[[1,0],[0,1]]}"#).unwrap();
    std::fs::write(&bad, r#"{"field":"real","n":2,"vectors":[[2,0],[0,1]]}"#).unwrap();
    let (code, v) = machine(&["lift-dual", &p("e1e1e2.frame"), good.to_str().unwrap(), "--subset", "1,3"]);
    assert_eq!(code, 0);
    assert_eq!(v["dual"]["columns"], serde_json::json!([[1, 0], [0, 0], [0, 1]]));
    assert_eq!(v["poset_eligible"], Value::Bool(false));
    let (code, _) = machine(&["lift-dual", &p("e1e1e2.frame"), bad.to_str().unwrap(), "--subset", "1,3"]);
    assert_eq!(code, 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn extend_output_is_a_frame_file_with_same_poset() {
    let dir = std::env::temp_dir().join(format!("frameposet-ext-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let o = run(&["extend", &p("square.frame"), "--to", "7", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let ext = dir.join("ext.frame");
    std::fs::write(&ext, &o.stdout).unwrap();
    let (_, v) = machine(&["poset", ext.to_str().unwrap()]);
    assert_eq!(v["ground"], 7);
    assert_eq!(v["members"], serde_json::json!([[], [1, 2], [2, 3], [1, 4], [3, 4], [1, 2, 3, 4]]));
    assert_eq!(run(&["extend", &p("square.frame"), "--to", "7", "--seed", "5"]).stdout, o.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn dot_sidecar() {
    let dir = std::env::temp_dir().join(format!("frameposet-dot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let dot = dir.join("square.dot");
    let o = run(&["poset", &p("square.frame"), "--dot", dot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph factor_poset {"));
    assert_eq!(text.matches("->").count(), 8);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["poset", "/nonexistent/file.frame"]).status.code(), Some(2));
    assert_eq!(run(&["poset", &p("e1e2e2.frame"), "--tol", "2"]).status.code(), Some(2));
    assert_eq!(run(&["lp-check", &p("square.frame"), "--p", "0.5"]).status.code(), Some(2));
    assert_eq!(run(&["project-onb", &p("zero_tail.frame")]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn self_test_is_byte_identical_across_processes() {
    let a = run(&["--format", "machine", "--seed", "11", "self-test"]);
    let b = run(&["--format", "machine", "--seed", "11", "self-test"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["--format", "machine", "--seed", "12", "self-test"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn analyze_reports_bounds() {
    let (code, v) = machine(&["analyze", &p("e1e1e2.frame")]);
    assert_eq!(code, 0);
    assert_eq!(v["lower_bound"].as_f64().unwrap(), 1.0);
    assert_eq!(v["upper_bound"].as_f64().unwrap(), 2.0);
    assert_eq!(v["tight"], Value::Bool(false));
}
