use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xyhecke")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{:?}: {}", args, String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn disc_q2() {
    let v = json(&["disc", "--q", "2", "--a", "1", "--b", "1"]);
    assert_eq!(v["discriminant"], 4);
    assert_eq!(v["table"], "discriminants");
}

#[test]
fn jl_given_alpha_verifies() {
    let v = json(&["jl", "--q", "3", "--a", "1", "--b", "2", "--alpha", "0,1,0"]);
    assert_eq!(v["verified"], true);
    assert_eq!(v["det"].as_i64().unwrap().abs(), 1);
    assert_eq!(v["checks"].as_array().unwrap().len(), 3);
}

#[test]
fn jl_negative_entries_parse() {
    let v = json(&["jl", "--q", "5", "--a", "1", "--b", "2", "--alpha", "-1,1,4,5,2"]);
    assert_eq!(v["alpha"], serde_json::json!([-1, 1, 4, 5, 2]));
}

#[test]
fn invariants_q2() {
    let v = json(&["invariants", "--q", "2", "--degp", "1", "--degq", "2"]);
    assert_eq!(v["cuspidal"]["cyclic_orders"], serde_json::json!([3, 5]));
    assert_eq!(v["cuspidal"]["invariant_factors"], serde_json::json!([15]));
    assert_eq!(v["shimura"]["invariant_factors"], serde_json::json!([3]));
    assert_eq!(v["conjecture"]["kernel"]["invariant_factors"], serde_json::json!([5]));
}

#[test]
fn gekeler_q2() {
    let v = json(&["gekeler", "--q", "2", "--a", "1", "--b", "1", "--s", "1"]);
    assert_eq!(v["matrix"], serde_json::json!([[0, 0], [1, -2]]));
}

#[test]
fn brandt_t_prime_q2() {
    let v = json(&["brandt", "--q", "2", "--a", "1", "--b", "1", "--s", "0"]);
    assert_eq!(v["matrix"], serde_json::json!([[2, 1, 2], [1, 2, 2], [2, 2, 1]]));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["disc", "--q", "4", "--a", "1", "--b", "1"]).status.code(), Some(2));
    assert_eq!(run(&["disc", "--q", "3", "--a", "0", "--b", "2"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
}

#[test]
fn search_miss_exits_three() {
    let out = run(&["jl", "--q", "5", "--a", "0", "--b", "2", "--search-bound", "1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    let args = ["--jobs", "2", "gorenstein", "--q", "5", "--a", "0", "--b", "2"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    let seq = run(&["--jobs", "1", "gorenstein", "--q", "5", "--a", "0", "--b", "2"]);
    assert_eq!(a.stdout, seq.stdout);
}

#[test]
fn selftest_scopes_pass() {
    for scope in ["tables", "formulas"] {
        let v = json(&["selftest", "--scope", scope]);
        assert_eq!(v["failed"], 0, "{}", scope);
    }
}

#[test]
fn pretty_disc_row() {
    let out = run(&["--format", "pretty", "disc", "--q", "3", "--a", "1", "--b", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.trim_end().ends_with("| 68"), "{}", text);
}
