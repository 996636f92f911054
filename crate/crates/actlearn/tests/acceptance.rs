//! Acceptance gate: every check of the verification battery must pass at
//! its pinned thresholds. One test (and one printed pass/fail line) per
//! check; run with `--nocapture` to see the lines for passing checks too.

use actlearn::suite;

fn run(id: usize) {
    let outcome = suite::run_check(id).expect("check id in range");
    println!("{}", outcome.line());
    assert!(outcome.passed, "{}", outcome.line());
}

#[test]
fn criterion_01_pushbutton_replay() {
    run(1);
}

#[test]
fn criterion_02_counter_replay() {
    run(2);
}

#[test]
fn criterion_03_circuit_library() {
    run(3);
}

#[test]
fn criterion_04_l2_exhaustive() {
    run(4);
}

#[test]
fn criterion_05_l1_exhaustive() {
    run(5);
}

#[test]
fn criterion_06_l3_sampled() {
    run(6);
}

#[test]
fn criterion_07_nondeterministic_guard() {
    run(7);
}

#[test]
fn criterion_08_limit_stability() {
    run(8);
}

#[test]
fn criterion_09_normalization() {
    run(9);
}

#[test]
fn criterion_10_telltale_separation() {
    run(10);
}

#[test]
fn criterion_11_hypothesis_counts() {
    run(11);
}
