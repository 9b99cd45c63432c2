//! End-to-end runs of the binary: pinned JSON payloads, determinism modulo
//! the meta block, exit codes, DOT export, and the result cache.

use std::path::Path;
use std::process::Command;

use serde_json::{json, Value};

fn run_in(args: &[&str], dir: Option<&Path>) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_two-closure"));
    // Tests must not touch (or be influenced by) a user-level cache.
    cmd.env_remove("TWO_CLOSURE_CACHE");
    if let Some(d) = dir {
        cmd.current_dir(d);
    }
    let out = cmd.args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn run(args: &[&str]) -> (i32, String, String) {
    run_in(args, None)
}

fn payload(stdout: &str) -> Value {
    let mut v: Value = serde_json::from_str(stdout).expect("stdout is JSON");
    let meta = v.as_object_mut().unwrap().remove("meta").expect("meta block");
    for key in ["timestamp", "elapsed_ms", "version", "cache"] {
        assert!(meta.get(key).is_some(), "meta lacks {key}");
    }
    v
}

#[test]
fn t2c_of_sym3_prints_the_pinned_payload() {
    let (code, stdout, _) = run(&["t2c", "sym:3", "--max-degree", "6"]);
    assert_eq!(code, 0);
    assert_eq!(
        payload(&stdout),
        json!({
            "spec": "sym:3",
            "outcome": "not_totally_2closed",
            "witness_degree": 5,
            "witness": "degree 5 = 2 + 3",
            "closure_order": 12,
            "theorem": "Theorem A: NotT2C",
        })
    );
}

#[test]
fn closure_of_alt4_prints_the_pinned_payload() {
    let (code, stdout, _) = run(&["closure", "alt:4"]);
    assert_eq!(code, 0);
    assert_eq!(
        payload(&stdout),
        json!({
            "spec": "alt:4",
            "degree": 4,
            "order": 12,
            "closure_order": 24,
            "equals": false,
            "engine": "backtrack",
            "rank": 2,
        })
    );
}

#[test]
fn structure_of_quaternion8_prints_the_pinned_payload() {
    let (code, stdout, _) = run(&["structure", "quaternion:8"]);
    assert_eq!(code, 0);
    assert_eq!(
        payload(&stdout),
        json!({
            "spec": "quaternion:8",
            "degree": 8,
            "order": 8,
            "abelian": false,
            "cyclic": false,
            "nilpotent": true,
            "soluble": true,
            "generalized_quaternion": true,
            "p_group": 2,
            "center_order": 2,
            "fitting_order": 8,
            "classification_tag": "odd-cyclic-times-generalized-quaternion",
            "t2c_prediction": "T2C",
            "rule": "Theorem A",
        })
    );
}

#[test]
fn identical_invocations_are_byte_identical_modulo_meta() {
    let args = ["orbitals", "dihedral:5 x cyclic:2 @disjoint"];
    let (code1, out1, _) = run(&args);
    let (code2, out2, _) = run(&args);
    assert_eq!(code1, 0);
    assert_eq!(code2, 0);
    assert_eq!(
        serde_json::to_string(&payload(&out1)).unwrap(),
        serde_json::to_string(&payload(&out2)).unwrap()
    );
}

#[test]
fn engine_cross_check_and_text_format() {
    let (code, stdout, _) = run(&["closure", "sym:3", "--engine", "both", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("closure_order = 6"));
    assert!(stdout.contains("equals = true"));
    assert!(!stdout.contains("timestamp"));
}

#[test]
fn parse_failures_exit_4() {
    let (code, _, stderr) = run(&["closure", "frobnitz:5"]);
    assert_eq!(code, 4);
    assert!(stderr.contains("unknown group family"));
    let (code, _, _) = run(&["closure", "cyclic:"]);
    assert_eq!(code, 4);
    let (code, _, stderr) = run(&["closure", "sym:3", "--engine", "warp"]);
    assert_eq!(code, 4);
    assert!(stderr.contains("engine must be"));
    let (code, _, _) = run(&["no-such-command"]);
    assert_eq!(code, 4);
    let (code, _, stderr) = run(&["verify", "lemma-9000"]);
    assert_eq!(code, 4);
    assert!(stderr.contains("unknown verification suite"));
}

#[test]
fn cap_overruns_exit_3() {
    let (code, _, stderr) = run(&["closure", "sym:5", "--max-degree", "3"]);
    assert_eq!(code, 3);
    assert!(stderr.contains("exceeds the cap"));
    let (code, _, stderr) = run(&["closure", "sym:4", "--node-budget", "1"]);
    assert_eq!(code, 3);
    assert!(stderr.contains("node budget"));
}

#[test]
fn failing_verification_exits_2_with_the_report_on_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let catalog = dir.path().join("bad.jsonl");
    // Three orbits, so the two-orbit dissection check must report failure.
    std::fs::write(
        &catalog,
        "{\"name\":\"three-orbits\",\"spec\":\"perm:6:[(0 1),(2 3),(4 5)]\"}\n",
    )
    .unwrap();
    let (code, stdout, _) = run(&[
        "verify",
        "dissection-6.5",
        "--catalog",
        catalog.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    let report = payload(&stdout);
    assert_eq!(report["failures"], json!(1));
}

#[test]
fn verify_suite_passes_against_the_bundled_catalog() {
    let (code, stdout, _) = run(&["verify", "cor-p-group"]);
    assert_eq!(code, 0);
    let report = payload(&stdout);
    assert_eq!(report["failures"], json!(0));
    assert_eq!(report["suite"], json!("cor-p-group"));
}

#[test]
fn dot_export_writes_a_digraph_and_is_rejected_elsewhere() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("orbitals.dot");
    let (code, _, _) = run(&["orbitals", "cyclic:5", "--dot", dot.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph {"));
    let (code, _, stderr) = run(&["reps", "sym:3", "--dot", dot.to_str().unwrap()]);
    assert_eq!(code, 4);
    assert!(stderr.contains("--dot applies to"));
}

#[test]
fn cache_file_serves_the_second_run() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let args = ["t2c", "elab:2:2", "--cache", cache.to_str().unwrap()];
    let (code, out1, _) = run(&args);
    assert_eq!(code, 0);
    let meta1: Value = serde_json::from_str(&out1).unwrap();
    assert_eq!(meta1["meta"]["cache"], json!("fresh"));
    assert_eq!(std::fs::read_to_string(&cache).unwrap().lines().count(), 1);
    let (code, out2, _) = run(&args);
    assert_eq!(code, 0);
    let meta2: Value = serde_json::from_str(&out2).unwrap();
    assert!(meta2["meta"]["cache"] == json!("hit") || meta2["meta"]["cache"] == json!("reverified"));
    assert_eq!(payload(&out1), payload(&out2));
}

#[test]
fn cache_env_var_names_the_default_location() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("env-cache.jsonl");
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_two-closure"));
    let out = cmd
        .env("TWO_CLOSURE_CACHE", &cache)
        .args(["closure", "cyclic:6"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(cache.exists());
}

#[test]
fn reps_enumerates_the_two_smallest_sym3_actions() {
    let (code, stdout, _) = run(&["reps", "sym:3", "--max-degree", "5"]);
    assert_eq!(code, 0);
    let p = payload(&stdout);
    assert_eq!(p["count"], json!(2));
    assert_eq!(p["reps"][0]["degree"], json!(3));
    assert_eq!(p["reps"][1]["degree"], json!(5));
}
