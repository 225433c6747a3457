//! End-to-end runs of the compiled binary: exit codes, exact output
//! bytes, and document round-trips.

use std::process::{Command, Output};

use primewheel::wheel::{synthesize_elimination, PrimeBasis, WheelFormula};
use primewheel::classify::{ClaimAudit, ClassReport};

fn primewheel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_primewheel"))
        .args(args)
        .env_remove("PRIMEWHEEL_CEILING")
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

#[test]
fn synth_document_is_exact_and_round_trips() {
    let output = primewheel(&["synth", "--r", "3", "--format", "json"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_of(&output);
    assert_eq!(
        text,
        "{\"r\":3,\"primes\":[2,3,5],\"primorial\":\"30\",\"coefficients\":{\"2\":\"20\",\"3\":\"24\"},\"constant\":\"-1\"}\n"
    );
    let parsed = WheelFormula::from_json(text.trim()).unwrap();
    let (expected, _) = synthesize_elimination(&PrimeBasis::first(3).unwrap());
    assert_eq!(parsed, expected);

    // repeated runs and both methods emit identical bytes
    let again = primewheel(&["synth", "--r", "3", "--method", "crt", "--format", "json"]);
    assert_eq!(output.stdout, again.stdout);
}

#[test]
fn verify_range_exits_clean() {
    let output = primewheel(&["verify", "--r-min", "2", "--r-max", "8"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_of(&output);
    assert_eq!(text.lines().count(), 7);
    assert!(text.lines().all(|line| line.ends_with(" ok")));
}

#[test]
fn audit_counterexample_exits_one_with_report() {
    let output = primewheel(&["audit", "--r", "4", "--k", "2", "--s", "2", "--format", "json"]);
    assert_eq!(output.status.code(), Some(1));
    let text = stdout_of(&output);
    let audit = ClaimAudit::from_json(text.trim()).unwrap();
    assert_eq!(audit.witnesses(), &[primewheel::BigInt::from(2057)]);
    assert_eq!(text.matches("\"2057\"").count(), 1);
}

#[test]
fn classify_report_round_trips() {
    let output = primewheel(&["classify", "--r", "3", "--k", "2", "--format", "json"]);
    assert_eq!(output.status.code(), Some(0));
    let report = ClassReport::from_json(stdout_of(&output).trim()).unwrap();
    assert_eq!(report.r(), 3);
    assert_eq!(report.claim_bound(), 2);
    assert!(report.witnesses().is_empty());
}

#[test]
fn gen_csv_matches_reference_primes() {
    let output = primewheel(&["gen", "--r", "2", "--format", "csv"]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout_of(&output), "5\n7\n11\n13\n17\n19\n23\n");

    let windowed = primewheel(&["gen", "--r", "3", "--window", "5..49", "--format", "csv"]);
    assert_eq!(
        stdout_of(&windowed),
        "7\n11\n13\n17\n19\n23\n29\n31\n37\n41\n43\n47\n"
    );
}

#[test]
fn signature_reports_both_outcomes() {
    let member = primewheel(&["signature", "--n", "121", "--r", "4", "--format", "json"]);
    assert_eq!(member.status.code(), Some(0));
    assert_eq!(
        stdout_of(&member),
        "{\"n\":\"121\",\"r\":4,\"member\":true,\"offsets\":[\"2\",\"4\",\"5\"],\"t\":\"-3\"}\n"
    );

    let excluded = primewheel(&["signature", "--n", "15", "--r", "3"]);
    assert_eq!(excluded.status.code(), Some(0));
    assert_eq!(stdout_of(&excluded), "15 is not a value: divisible by 3\n");
}

#[test]
fn bench_emits_csv_metrics() {
    let output = primewheel(&["bench", "--r", "3", "--window", "5..49"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_of(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "method,lo,hi,count,millis");
    assert_eq!(lines.len(), 4);
    for (line, method) in lines[1..].iter().zip(["formula", "scan", "sieve"]) {
        assert!(line.starts_with(&format!("{method},5,49,12,")));
    }
}

#[test]
fn invalid_input_exits_two() {
    let output = primewheel(&["gen", "--r", "0"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(!output.stderr.is_empty());

    let output = primewheel(&["gen", "--r", "3", "--window", "49..5"]);
    assert_eq!(output.status.code(), Some(2));

    let output = primewheel(&["classify", "--r", "3", "--k", "0"]);
    assert_eq!(output.status.code(), Some(2));

    let output = primewheel(&["synth", "--r", "3", "--format", "csv"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn resource_ceiling_exits_three() {
    let output = primewheel(&["classify", "--r", "3", "--k", "2", "--ceiling", "10"]);
    assert_eq!(output.status.code(), Some(3));

    let env_output = Command::new(env!("CARGO_BIN_EXE_primewheel"))
        .args(["classify", "--r", "3", "--k", "2"])
        .env("PRIMEWHEEL_CEILING", "10")
        .output()
        .expect("binary runs");
    assert_eq!(env_output.status.code(), Some(3));

    // the flag wins over the environment
    let flag_wins = Command::new(env!("CARGO_BIN_EXE_primewheel"))
        .args(["classify", "--r", "3", "--k", "2", "--ceiling", "1000"])
        .env("PRIMEWHEEL_CEILING", "10")
        .output()
        .expect("binary runs");
    assert_eq!(flag_wins.status.code(), Some(0));
}
