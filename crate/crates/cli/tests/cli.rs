use std::fs;
use std::process::{Command, Output};

use regorb_cli::cache::Cache;
use regorb_cli::job::{GroupChoice, JobRequest, JobSpec, VerdictRecord};
use regorb_core::orbitengine::CoverageBudget;

fn regorb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regorb"))
        .args(args)
        .env_remove("REGORB_CONFIG")
        .current_dir(env!("CARGO_TARGET_TMPDIR"))
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn exit_codes() {
    assert_eq!(code(&regorb(&["dims", "--n", "6", "--p", "3"])), 0);
    assert_eq!(code(&regorb(&["verdict", "--n", "5", "--p", "2", "--mu", "3,2"])), 0);
    assert_eq!(code(&regorb(&["verdict", "--frobnicate"])), 2);
    assert_eq!(code(&regorb(&["verdict", "--n", "5", "--p", "4", "--mu", "3,2"])), 2);
    assert_eq!(code(&regorb(&["verdict", "--n", "5", "--p", "3", "--mu", "3,2", "--scalars", "3"])), 2);
    assert_eq!(code(&regorb(&["verdict", "--n", "12", "--p", "2", "--mu", "7,5"])), 3);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "not a module").unwrap();
    let module = format!("ext:{}", bad.display());
    assert_eq!(code(&regorb(&["verdict", "--module", &module, "--group", "ext"])), 4);
}

#[test]
fn verdict_json_is_a_record() {
    let out = regorb(&["verdict", "--n", "6", "--p", "5", "--mu", "3,3", "--group", "an", "--json"]);
    assert_eq!(code(&out), 0);
    let record: VerdictRecord = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(record.verdict.label(), "Regular");
    assert_eq!(record.module.dim, 5);
}

#[test]
fn cache_round_trip_via_binary() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("verdicts.jsonl");
    let cache = cache.to_str().unwrap();
    let args = ["verdict", "--n", "7", "--p", "2", "--mu", "5,2", "--group", "an", "--json", "--cache", cache];
    let first = regorb(&args);
    let second = regorb(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(fs::read_to_string(cache).unwrap().lines().count(), 1);
}

#[test]
fn cache_round_trip_in_process() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path().join("c.jsonl"));
    let req = JobRequest { n: Some(5), p: Some(3), module: "dmu", mu: Some("3,1,1"), group: GroupChoice::An, sign: false, scalars: 2 };
    let job = JobSpec::new(req, &CoverageBudget::default()).unwrap();
    let a = cache.get_or_run(&job).unwrap();
    let b = cache.get_or_run(&job).unwrap();
    assert!(!a.hit && b.hit);
    assert_eq!(a.line, b.line);
    assert_eq!(b.record.verdict.label(), "NoRegular");
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("regorb.json");
    fs::write(&config, r#"{"seed": 7}"#).unwrap();
    let run = |extra: &[&str]| {
        let mut args = vec!["verdict", "--n", "5", "--p", "2", "--mu", "3,2", "--json"];
        args.extend_from_slice(extra);
        let out = Command::new(env!("CARGO_BIN_EXE_regorb")).args(&args).env("REGORB_CONFIG", &config).output().unwrap();
        let record: VerdictRecord = serde_json::from_slice(&out.stdout).unwrap();
        record.verdict.seed
    };
    assert_eq!(run(&[]), 7);
    assert_eq!(run(&["--seed", "11"]), 11);
    fs::write(&config, r#"{"unknown": 1}"#).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_regorb")).args(["dims", "--n", "5", "--p", "2"]).env("REGORB_CONFIG", &config).output().unwrap();
    assert_eq!(code(&out), 4);
}

#[test]
fn verify_tables_small_passes_and_is_deterministic() {
    let a = regorb(&["verify-tables", "--max-n", "6"]);
    let b = regorb(&["verify-tables", "--max-n", "6", "--jobs", "2"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("PASS")));
    assert!(!text.lines().any(|l| l.starts_with("FAIL")));
}

#[test]
fn bounds_and_graph_cert_commands() {
    let out = regorb(&["bounds", "--n", "21", "--p", "2", "--json"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8(out.stdout).unwrap().contains("697"));
    assert_eq!(code(&regorb(&["bounds", "--n", "20", "--p", "6"])), 2);
    assert_eq!(code(&regorb(&["graph-cert", "--n", "13", "--p", "3", "--shape", "hook", "--samples", "500"])), 0);
    assert_eq!(code(&regorb(&["graph-cert", "--n", "11", "--p", "3"])), 2);
    let out = regorb(&["base-size", "--n", "8", "--p", "2", "--mu", "6,2", "--json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["base_size"], 3);
}
