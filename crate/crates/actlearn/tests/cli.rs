//! End-to-end tests of the command-line interface: output formats, exit
//! codes, and trace determinism.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn actlearn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_actlearn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("not signalled")
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("actlearn-cli-{}-{name}", std::process::id()));
    p
}

#[test]
fn graph_prints_canonical_observations() {
    let out = actlearn(&["graph", "--scenario", "coin"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "{} -> {}\n{} -> {h}\n{h} -> {}\n{h} -> {h}\n");
}

#[test]
fn dftt_prints_the_tell_tale_of_a_deterministic_model() {
    let out = actlearn(&["dftt", "--scenario", "pushbutton-flip"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "{} -> {p}\n{p} -> {}\n");
}

#[test]
fn dftt_rejects_nondeterministic_models_with_exit_2() {
    let out = actlearn(&["dftt", "--scenario", "coin"]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not deterministic"));
}

#[test]
fn equiv_reports_equivalence_with_exit_0() {
    let out = actlearn(&["equiv", "coin", "coin"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "equivalent\n");
}

#[test]
fn equiv_reports_a_witness_with_exit_1() {
    let path = temp_path("fake-coin.json");
    fs::write(
        &path,
        r#"{"atoms":["h"],"events":[{"pre":[],"post":["-h"]}]}"#,
    )
    .unwrap();
    let out = actlearn(&["equiv", "coin", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1);
    let text = stdout(&out);
    assert!(text.starts_with("inequivalent\n"), "got: {text}");
    assert!(text.contains("witness state:"), "got: {text}");
    fs::remove_file(&path).ok();
}

#[test]
fn unknown_scenario_exits_2() {
    let out = actlearn(&["graph", "--scenario", "nonesuch"]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown scenario"));
}

#[test]
fn learn_replays_an_observation_file() {
    let path = temp_path("button-obs.txt");
    fs::write(&path, "{} -> {p}\n{p} -> {}\n").unwrap();
    let out = actlearn(&[
        "learn",
        "--scenario",
        "pushbutton-flip",
        "--learner",
        "l2",
        "--obs-file",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["steps_to_verdict"], 2);
    assert_eq!(report["equivalent_to_target"], true);
    assert_eq!(
        report["verdict"]["events"],
        serde_json::json!([
            {"pre": ["p"], "post": ["-p"]},
            {"pre": ["-p"], "post": ["p"]}
        ])
    );
    fs::remove_file(&path).ok();
}

#[test]
fn learn_warns_on_class_mismatch_but_runs() {
    let out = actlearn(&[
        "learn",
        "--scenario",
        "coin",
        "--learner",
        "l1",
        "--max-steps",
        "50",
    ]);
    assert_eq!(exit_code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["steps_to_verdict"], serde_json::Value::Null);
}

#[test]
fn learn_traces_are_byte_identical_across_runs() {
    let trace_a = temp_path("trace-a.jsonl");
    let trace_b = temp_path("trace-b.jsonl");
    let args = |trace: &str| {
        vec![
            "learn".to_owned(),
            "--scenario".to_owned(),
            "counter-2".to_owned(),
            "--learner".to_owned(),
            "l2".to_owned(),
            "--seed".to_owned(),
            "9".to_owned(),
            "--max-steps".to_owned(),
            "20".to_owned(),
            "--trace".to_owned(),
            trace.to_owned(),
        ]
    };
    let run_a = Command::new(env!("CARGO_BIN_EXE_actlearn"))
        .args(args(trace_a.to_str().unwrap()))
        .output()
        .unwrap();
    let run_b = Command::new(env!("CARGO_BIN_EXE_actlearn"))
        .args(args(trace_b.to_str().unwrap()))
        .output()
        .unwrap();
    assert_eq!(exit_code(&run_a), 0);
    assert_eq!(fs::read(&trace_a).unwrap(), fs::read(&trace_b).unwrap());
    // reports agree on everything except the timing field
    let mut a: serde_json::Value = serde_json::from_str(stdout(&run_a).trim()).unwrap();
    let mut b: serde_json::Value = serde_json::from_str(stdout(&run_b).trim()).unwrap();
    a["elapsed_ms"] = 0.into();
    b["elapsed_ms"] = 0.into();
    assert_eq!(a, b);
    fs::remove_file(&trace_a).ok();
    fs::remove_file(&trace_b).ok();
}

#[test]
fn normalize_splits_formula_preconditions() {
    let path = temp_path("raw.json");
    fs::write(
        &path,
        r#"{"atoms":["p","q","r"],"events":[{"pre":"p | q","post":["r"]}]}"#,
    )
    .unwrap();
    let out = actlearn(&["normalize", "--model", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(
        stdout(&out).trim(),
        r#"{"atoms":["p","q","r"],"events":[{"pre":["q"],"post":["r"]},{"pre":["p"],"post":["r"]}]}"#
    );
    fs::remove_file(&path).ok();
}

#[test]
fn library_learn_recovers_the_circuit() {
    let out = actlearn(&[
        "library-learn",
        "--scenario",
        "circuit",
        "--seed",
        "1",
        "--max-steps",
        "64",
    ]);
    assert_eq!(exit_code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["equivalent_to_target"], true);
    let steps = report["steps_to_verdict"].as_u64().unwrap();
    assert!(steps <= 32, "verdict after {steps} triples");
}

#[test]
fn limit_learner_reports_stabilization() {
    let out = actlearn(&[
        "learn",
        "--scenario",
        "coin",
        "--learner",
        "limit",
        "--seed",
        "4",
        "--max-steps",
        "30",
    ]);
    assert_eq!(exit_code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["equivalent_to_target"], true);
    let steps = report["steps_to_verdict"].as_u64().unwrap();
    assert!(steps <= 4, "conjecture stabilized only at {steps}");
}

#[test]
fn telltale_learner_identifies_a_two_atom_target() {
    let out = actlearn(&[
        "learn",
        "--scenario",
        "counter-2",
        "--learner",
        "telltale",
        "--seed",
        "2",
        "--max-steps",
        "16",
    ]);
    assert_eq!(exit_code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["equivalent_to_target"], true);
}

#[test]
fn telltale_learner_rejects_oversized_vocabularies() {
    let out = actlearn(&["learn", "--scenario", "counter-3", "--learner", "telltale"]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not feasible"));
}
