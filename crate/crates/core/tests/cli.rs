use std::fs;

use serde_json::Value;
use signcert::{cli, data};

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("signcert").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

#[test]
fn verify_shipped_data_passes() {
    let r = run(&["verify"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.starts_with("verdict: PASS\n"));
    assert!(r.out.contains("classification: 94 twins, 34 non-twins"));
}

#[test]
fn verify_writes_deterministic_report() {
    let dir = tempfile::tempdir().unwrap();
    let scheme = dir.path().join("table1.json");
    let certs = dir.path().join("certs.json");
    fs::write(&scheme, data::TABLE1_JSON).unwrap();
    fs::write(&certs, data::CERTIFICATES_JSON).unwrap();

    let mut reports = Vec::new();
    for (name, jobs) in [("a.json", "1"), ("b.json", "4")] {
        let path = dir.path().join(name);
        let r = run(&[
            "--jobs",
            jobs,
            "verify",
            "--scheme",
            scheme.to_str().unwrap(),
            "--certs",
            certs.to_str().unwrap(),
            "--report",
            path.to_str().unwrap(),
        ]);
        assert_eq!(r.code, 0, "{}", r.err);
        reports.push(fs::read(&path).unwrap());
    }
    assert_eq!(reports[0], reports[1]);

    let json: Value = serde_json::from_slice(&reports[0]).unwrap();
    assert_eq!(json["verdict"], "PASS");
    assert_eq!(json["n"], 9);
    assert_eq!(json["classification"]["non_twins"].as_array().unwrap().len(), 34);
    assert!(json["failures"].as_array().unwrap().is_empty());
    let case = &json["tuples"][0]["cases"][0];
    assert!(case["pattern"].is_array() && case["certificate_id"].is_u64() && case["verdict"] == "PASS");
}

#[test]
fn verify_reports_tampered_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let certs = dir.path().join("certs.json");
    let mut lib: Value = serde_json::from_str(data::CERTIFICATES_JSON).unwrap();
    lib[0]["R"][0] = Value::from("7/5");
    fs::write(&certs, lib.to_string()).unwrap();

    let r = run(&["verify", "--certs", certs.to_str().unwrap()]);
    assert_eq!(r.code, 1);
    assert!(r.out.starts_with("verdict: FAIL"));
    assert!(r.out.contains("FAIL [certificate] certificate #0"), "{}", r.out);
}

#[test]
fn twin_prints_witness() {
    let r = run(&["twin", "231"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("non-twin leg"));
    assert!(r.out.contains("RR' = 6/5"));
    assert!(r.out.contains("witness: {\"leg\":231,"));

    let r = run(&["twin", "0"]);
    assert_eq!(r.code, 0);
    assert!(!r.out.contains("non-twin"));
}

#[test]
fn count_matches_known_fractions() {
    let r = run(&["count", "1/3,1/3,1/3,1/3,1/3,1/3,1/3,1/3,1/3", "--strict"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("252/512"), "{}", r.out);

    let r = run(&["count", "1,0,0"]);
    assert!(r.out.contains("8/8"), "{}", r.out);
}

#[test]
fn hk_table_csv_flags_disagreement() {
    let r = run(&["hk-table", "--csv"]);
    assert_eq!(r.code, 0);
    assert!(r.out.starts_with("k,vector,computed,paper_value,match\n"));
    assert!(r.out.contains(",R4,63/128,7/16,no"));
}

#[test]
fn solve_commands_emit_exact_json() {
    let tuple = "(0 255 (94 161) (105 150) (109 146))";
    let r = run(&["solve-qp", "--tuple", tuple, "--case", "2,*,*,7"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let json: Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(json["status"], "CERT");
    assert_eq!(json["value"], "18/19");

    let r = run(&[
        "solve-lambda",
        "--tuple",
        tuple,
        "--case",
        "2,*,*,7",
        "--r",
        "3/5,3/5,1/5,1/5,1/5,1/5,1/5,1/5,1/5",
    ]);
    assert_eq!(r.code, 0, "{}", r.err);
    let json: Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(json["margin"], "0");
    assert_eq!(json["lambda"], serde_json::json!(["2/5", "0", "0", "3/5"]));
}

#[test]
fn lattice_and_reduce() {
    let r = run(&["lattice", "join", "219", "234"]);
    assert_eq!(r.out.trim(), "ε218=(+,-,-,+,-,-,+,-,+)");

    let r = run(&["reduce-scheme", "--steps", "4"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.contains("n = 5\n(0 15 (5 10)) (6 9) (3 12) (4 11) (2 13) (1 14 (7 8))"));
}

#[test]
fn sample_is_reproducible() {
    let a = run(&["sample", "--samples", "500", "--seed", "3"]);
    let b = run(&["--jobs", "3", "sample", "--samples", "500", "--seed", "3"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.out, b.out);
}

#[test]
fn input_errors_exit_two() {
    for args in [
        &["sample"][..],
        &["count", "1,x"],
        &["twin", "256"],
        &["solve-qp", "--tuple", "(0 254)", "--case", "1"],
        &["verify", "--scheme", "/nonexistent/scheme.json"],
        &["frobnicate"],
    ] {
        let r = run(args);
        assert_eq!(r.code, 2, "{args:?}: {}", r.out);
        assert!(!r.err.is_empty(), "{args:?}");
    }
}
