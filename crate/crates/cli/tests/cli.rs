use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fuzzsemi")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn coupled_example_meets_tolerance() {
    let out = run(&["example", "problem5", "--nodes", "9"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = json(&out);
    assert_eq!(doc["schema"], "fuzzsemi/1");
    assert_eq!(doc["command"], "example");
    assert!(doc["max_distance"].as_f64().unwrap() <= 1e-8);
    assert_eq!(doc["times"].as_array().unwrap().len(), 9);
}

#[test]
fn zero_horizon_returns_initial_state() {
    let out = run(&["example", "remarkA", "--t-max", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["times"], serde_json::json!([0.0]));
    assert_eq!(doc["max_distance"].as_f64(), Some(0.0));
}

#[test]
fn unknown_example_is_a_usage_error() {
    let out = run(&["example", "nope"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("problem4"));
}

#[test]
fn solves_crisp_growth_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("growth.json");
    fs::write(&cfg, r#"{"order":1,"operator":{"kind":"identity"},"u0":{"tri":[1,1,1]},"T":1,"tol":1e-12}"#).unwrap();
    let csv = dir.path().join("bands.csv");
    let out = run(&["solve", cfg.to_str().unwrap(), "--nodes", "5", "--csv", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = json(&out);
    let last = &doc["states"].as_array().unwrap()[4];
    let lower = last["lower"].as_array().unwrap();
    for x in lower {
        assert!((x.as_f64().unwrap() - std::f64::consts::E).abs() < 1e-10, "{last}");
    }
    let bands = fs::read_to_string(&csv).unwrap();
    assert!(bands.starts_with("t,component,r,lower,upper"));
    assert_eq!(bands.lines().count(), 1 + 5 * 3);
}

#[test]
fn zero_data_stays_zero() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("zero.json");
    fs::write(
        &cfg,
        r#"{"order":2,"operator":{"kind":"matrix","entries":[[1,1],[-1,-1]]},"u0":{"tri":[0,0,0]},"v0":{"tri":[0,0,0]},"T":2,"tol":1e-9}"#,
    )
    .unwrap();
    let out_file = dir.path().join("out.json");
    let out = run(&["--out", out_file.to_str().unwrap(), "solve", cfg.to_str().unwrap(), "--nodes", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&fs::read_to_string(out_file).unwrap()).unwrap();
    let states = doc["states"].as_array().unwrap();
    assert_eq!(states.len(), 4);
    assert!(states.iter().all(|s| {
        s.as_array().unwrap().iter().all(|c| {
            ["lower", "upper"].iter().all(|k| c[k].as_array().unwrap().iter().all(|x| x.as_f64() == Some(0.0)))
        })
    }));
}

#[test]
fn malformed_config_exits_one_with_path() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    fs::write(&cfg, r#"{"order":1,"operator":{"kind":"identity"},"u0":{"tri":[0,1,2]},"T":1,"tol":-3}"#).unwrap();
    let out = run(&["solve", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("tol"));
    fs::write(&cfg, "{ not json").unwrap();
    assert_eq!(run(&["solve", cfg.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(run(&["solve", "/nonexistent/cfg.json"]).status.code(), Some(1));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "core", "--seed", "9", "--cases", "50"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let doc = json(&a);
    assert_eq!(doc["command"], "verify");
    assert_eq!(doc["passed"], true);
}

#[test]
fn verify_semigroup_reports_generator_table() {
    let out = run(&["--threads", "2", "verify", "semigroup", "--cases", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let table = doc["generator_table"].as_array().unwrap();
    assert!(!table.is_empty());
    for row in table {
        assert!(row["max_residual"].as_f64().unwrap() <= row["bound"].as_f64().unwrap() + 1e-6);
    }
}

#[test]
fn unknown_suite_is_rejected() {
    assert_eq!(run(&["verify", "everything"]).status.code(), Some(1));
}
