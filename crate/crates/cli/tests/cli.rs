use std::process::{Command, Output};

use serde_json::Value;

fn qwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwalk"))
        .args(args)
        .env_remove("QWALK_JOBS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = qwalk(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn rows_where(family: &str, lo: &str, hi: &str, column: &str) -> Vec<u64> {
    let out = qwalk(&["enumerate", family, lo, hi, "--format", "csv"]);
    assert!(out.status.success());
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let header = reader.headers().unwrap().clone();
    let col = header.iter().position(|h| h == column).unwrap();
    reader
        .records()
        .map(Result::unwrap)
        .filter(|r| &r[col] == "true")
        .map(|r| r[0].parse().unwrap())
        .collect()
}

#[test]
fn spectrum_examples() {
    let v = json(&["spectrum", "X", "4"]);
    assert_eq!(v["values"], serde_json::json!(["2", "0", "-2", "0"]));
    let v = json(&["spectrum", "G", "14"]);
    assert_eq!(v["values"][0], "6");
    assert_eq!(v["values"][7], "-6");
    for j in 1..14 {
        if j != 7 {
            let x = v["values"][j].as_str().unwrap();
            assert!(x == "1" || x == "-1", "lambda_{j} = {x}");
        }
    }
    assert_eq!(qwalk(&["spectrum", "G", "1"]).status.code(), Some(2));
}

#[test]
fn classify_examples() {
    let v = json(&["classify", "G", "14"]);
    assert_eq!(v["closed_form"]["fr"], true);
    assert_eq!(v["closed_form"]["pgfr"], true);
    assert_eq!(v["closed_form"]["pst"], false);
    assert_eq!(v["decided"]["fr"]["witness_t_over_2pi"], "1/7");
    assert_eq!(v["agreement"], true);

    let v = json(&["classify", "X", "12"]);
    assert_eq!(v["decided"]["pgfr"]["holds"], false);
    assert!(v["decided"]["pgfr"]["certificate"].is_object());

    let v = json(&["classify", "G", "8"]);
    assert_eq!(v["closed_form"]["pgst"], true);
    assert_eq!(v["closed_form"]["fr"], false);
    assert_eq!(v["closed_form"]["pgfr"], true);
    assert_eq!(v["decided"]["pgfr"]["holds"], true);
    assert!(v["periodicity_check"].is_null());

    let v = json(&["classify", "G", "9"]);
    assert_eq!(v["periodicity_check"]["g"], 3);
    assert_eq!(v["periodicity_check"]["passes"], true);
}

#[test]
fn enumerate_examples() {
    assert_eq!(
        rows_where("X", "2", "100", "decided_pgfr"),
        vec![2, 4, 6, 10, 14, 22, 26, 34, 38, 46, 58, 62, 74, 82, 86, 94]
    );
    assert_eq!(rows_where("G", "2", "30", "decided_fr"), vec![2, 4, 6, 14, 22]);
    assert_eq!(
        rows_where("G", "2", "20", "decided_periodic"),
        vec![2, 3, 4, 6, 7, 9, 11, 14, 18, 19]
    );
    let v = json(&["enumerate", "G", "2", "40"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 39);
    assert_eq!(v["disagreements"], serde_json::json!([]));
}

#[test]
fn enumerate_rejects_bad_ranges() {
    assert_eq!(qwalk(&["enumerate", "X", "1", "10"]).status.code(), Some(2));
    assert_eq!(qwalk(&["enumerate", "X", "10", "5"]).status.code(), Some(2));
    assert_eq!(qwalk(&["enumerate", "X", "2", "501"]).status.code(), Some(2));
}

#[test]
fn simulate_examples() {
    let v = json(&["simulate", "G", "14", "0", "7", "2pi/7"]);
    assert!(v["residual"].as_f64().unwrap() < 1e-8);
    assert!(v["abs_beta"].as_f64().unwrap() > 0.0);
    assert_eq!(v["fr_within_tolerance"], true);

    let v = json(&["simulate", "X", "4", "0", "2", "pi/2"]);
    assert!((v["abs_beta"].as_f64().unwrap() - 1.0).abs() < 1e-10);

    let v = json(&["simulate", "G", "10", "0", "5", "2pi/5"]);
    assert!(v["residual"].as_f64().unwrap() > 0.01);
    assert_eq!(v["fr_within_tolerance"], false);
}

#[test]
fn simulate_usage_errors() {
    assert_eq!(qwalk(&["simulate", "G", "14", "0", "7", "2tau/7"]).status.code(), Some(2));
    assert_eq!(qwalk(&["simulate", "G", "14", "0", "14", "pi"]).status.code(), Some(2));
    assert_eq!(qwalk(&["simulate", "Y", "14", "0", "7", "pi"]).status.code(), Some(2));
    assert_eq!(qwalk(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn sweep_examples() {
    let v = json(&["sweep", "G", "8", "0", "4", "--tmax", "500", "--steps", "1000000"]);
    assert!(v["fidelity"].as_f64().unwrap() >= 0.99);
    assert_eq!(v["meets_threshold"], true);
    assert_eq!(v["evidence_only"], true);

    let v = json(&["sweep", "G", "16", "0", "8", "--tmax", "500", "--steps", "1000000"]);
    assert!(v["fidelity"].as_f64().unwrap() < 0.99);
    assert_eq!(v["meets_threshold"], false);

    let v = json(&["sweep", "X", "10", "0", "5"]);
    assert!(v["fidelity"].as_f64().unwrap() < 1.0 - 1e-3);
    let fr = json(&["simulate", "X", "10", "0", "5", "2pi/5"]);
    assert_eq!(fr["fr_within_tolerance"], true);
}

#[test]
fn sweep_csv_grid() {
    let out = qwalk(&["sweep", "X", "4", "0", "2", "--tmax", "10", "--steps", "100", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,fidelity"));
    assert_eq!(lines.count(), 100);
    assert!(String::from_utf8_lossy(&out.stderr).contains("\"evidence_only\":true"));
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let run = |jobs: &str| {
        Command::new(env!("CARGO_BIN_EXE_qwalk"))
            .args(["enumerate", "G", "2", "60"])
            .env("QWALK_JOBS", jobs)
            .output()
            .unwrap()
    };
    let one = run("1");
    let four = run("4");
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);

    let sweep = |jobs: &str| {
        Command::new(env!("CARGO_BIN_EXE_qwalk"))
            .args(["sweep", "G", "8", "0", "4", "--steps", "20000", "--jobs", jobs])
            .env_remove("QWALK_JOBS")
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(sweep("1"), sweep("3"));
}

#[test]
fn jobs_env_overrides_flag() {
    let out = Command::new(env!("CARGO_BIN_EXE_qwalk"))
        .args(["spectrum", "X", "6", "--jobs", "2"])
        .env("QWALK_JOBS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let out = qwalk(&["selftest"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["criteria"].as_array().unwrap().len(), 10);
    assert_eq!(v["passed"], true, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(out.status.code(), Some(0));
}
