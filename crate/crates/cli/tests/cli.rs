//! End-to-end tests of the `holwfs` binary: command output, output
//! formats, determinism, exit codes, and cap handling.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_holwfs"));
    c.env_remove("HOLWFS_MAX_DOMAIN");
    c
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../programs")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    let mut cmd = bin();
    cmd.args(args);
    cmd.output().expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

fn fixture_arg(name: &str) -> String {
    fixture(name).to_str().expect("utf8 path").to_string()
}

#[test]
fn check_reports_program_shape() {
    let out = stdout_of(&["check", &fixture_arg("subset.hol")]);
    assert_eq!(out, "ok: 3 predicates, 3 clauses, universe of 2\n");
}

#[test]
fn check_json_is_parseable() {
    let out = stdout_of(&["check", &fixture_arg("subset.hol"), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).expect("valid json");
    assert_eq!(v["status"], "ok");
    assert_eq!(v["universe"], serde_json::json!(["a", "b"]));
}

#[test]
fn model_output_is_byte_deterministic() {
    let args = ["model", &fixture_arg("higher_order_negation.hol")];
    let first = stdout_of(&args);
    let second = stdout_of(&args);
    assert_eq!(first, second);
    assert!(first.contains("w f = true"));
    assert!(first.contains("w t = false"));
    assert!(first.contains("p t = true"));
}

#[test]
fn model_json_shape() {
    let out = stdout_of(&[
        "model",
        &fixture_arg("double_negation.hol"),
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).expect("valid json");
    assert_eq!(v["predicates"]["p"]["table"], "false");
    assert_eq!(v["predicates"]["p"]["type"], "o");
    assert!(v["revisions"].is_u64());
}

#[test]
fn model_trace_lists_healthy_steps() {
    let out = stdout_of(&["model", &fixture_arg("even_loop.hol"), "--trace"]);
    assert!(out.contains("trace:"));
    assert!(out.contains("step 1:"));
    assert!(out.contains(" ok"));
    assert!(!out.contains("VIOLATION"));
}

#[test]
fn kk_differs_from_wf_on_double_negation() {
    let wf = stdout_of(&["model", &fixture_arg("double_negation.hol")]);
    let kk = stdout_of(&["kk", &fixture_arg("double_negation.hol")]);
    assert!(wf.contains("p = false"));
    assert!(kk.contains("p = undef"));
}

#[test]
fn stable_enumerates_three_models_on_even_loop() {
    let out = stdout_of(&["stable", &fixture_arg("even_loop.hol")]);
    assert!(out.starts_with("3 stable models\n"));
    let json = stdout_of(&["stable", &fixture_arg("even_loop.hol"), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).expect("valid json");
    assert_eq!(v["count"], 3);
    assert_eq!(v["models"].as_array().expect("array").len(), 3);
}

#[test]
fn query_args_print_one_truth_value_per_line() {
    let out = stdout_of(&[
        "query",
        &fixture_arg("subset.hol"),
        "subset p q",
        "subset q p",
    ]);
    assert_eq!(out, "true\nfalse\n");
}

#[test]
fn query_stdin_skips_blanks_and_comments() {
    let mut cmd = bin();
    cmd.args(["query", &fixture_arg("subset.hol")])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("binary runs");
    child
        .stdin
        .as_mut()
        .expect("stdin")
        .write_all(b"% a comment\n\nsubset p q\n")
        .expect("write stdin");
    let out = child.wait_with_output().expect("binary exits");
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "true\n");
}

#[test]
fn query_json_pairs_query_with_value() {
    let out = stdout_of(&[
        "query",
        &fixture_arg("fact_and_loop.hol"),
        "s & ~r",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).expect("valid json");
    assert_eq!(v["results"][0]["query"], "s & ~r");
    assert_eq!(v["results"][0]["value"], "undef");
}

#[test]
fn compare_random_is_deterministic_and_clean() {
    let args = ["compare", "--random", "100", "--seed", "42"];
    let first = stdout_of(&args);
    let second = stdout_of(&args);
    assert_eq!(first, second);
    assert_eq!(first, "programs: 100\nmismatches: 0\n");
}

#[test]
fn compare_single_file() {
    let out = stdout_of(&["compare", &fixture_arg("even_loop.hol"), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).expect("valid json");
    assert_eq!(v["programs"], 1);
    assert_eq!(v["mismatches"], 0);
}

#[test]
fn domain_lists_elements_in_order() {
    let out = stdout_of(&["domain", "o"]);
    assert_eq!(out, "3 elements of three o over {c0}\nf\nu\nt\n");
    let pairs = stdout_of(&["domain", "o", "--flavor", "pair"]);
    assert!(pairs.starts_with("3 elements of pair o over {c0}\n"));
    let table = stdout_of(&["domain", "o->o", "--universe", "a,b"]);
    assert!(table.starts_with("11 elements of three o->o over {a, b}\n"));
}

#[test]
fn missing_file_exits_2() {
    let out = run(&["model", "/no/such/file.hol"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot read"));
}

#[test]
fn type_error_exits_1_with_diagnostics() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("bad.hol");
    std::fs::write(&path, "p : o.\np <- q.\n").expect("write fixture");
    let out = run(&["check", path.to_str().expect("utf8")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("E003"));

    let mut cmd = bin();
    cmd.args(["check", path.to_str().expect("utf8"), "--format", "json"]);
    let out = cmd.output().expect("binary runs");
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).expect("diagnostics are json");
    assert_eq!(v["status"], "error");
    assert_eq!(v["diagnostics"][0]["code"], "E003");
}

#[test]
fn cap_breach_exits_3() {
    let out = run(&[
        "model",
        &fixture_arg("higher_order_negation.hol"),
        "--max-domain",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn env_cap_is_used_and_flag_overrides_it() {
    let mut cmd = bin();
    cmd.args(["model", &fixture_arg("higher_order_negation.hol")])
        .env("HOLWFS_MAX_DOMAIN", "5");
    let out = cmd.output().expect("binary runs");
    assert_eq!(out.status.code(), Some(3));

    let mut cmd = bin();
    cmd.args([
        "model",
        &fixture_arg("higher_order_negation.hol"),
        "--max-domain",
        "20000",
    ])
    .env("HOLWFS_MAX_DOMAIN", "5");
    let out = cmd.output().expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn bad_env_cap_is_a_user_error() {
    let mut cmd = bin();
    cmd.args(["model", &fixture_arg("double_negation.hol")])
        .env("HOLWFS_MAX_DOMAIN", "lots");
    let out = cmd.output().expect("binary runs");
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("HOLWFS_MAX_DOMAIN"));
}

#[test]
fn ill_typed_query_exits_1() {
    let out = run(&["query", &fixture_arg("subset.hol"), "subset p"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("E002"));
}
