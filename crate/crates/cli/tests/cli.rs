use std::process::{Command, Output};

use serde_json::Value;

fn qaskey(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qaskey")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(args: &[&str]) -> (Value, Output) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = qaskey(&all);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    (v, o)
}

fn schema() -> jsonschema::JSONSchema {
    let text = include_str!("../schema/output.schema.json");
    let s: Value = serde_json::from_str(text).unwrap();
    jsonschema::JSONSchema::options().with_draft(jsonschema::Draft::Draft202012).compile(&s).expect("schema compiles")
}

fn assert_schema(v: &Value) {
    let s = schema();
    let msgs: Vec<String> = match s.validate(v) {
        Ok(()) => Vec::new(),
        Err(errs) => errs.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    assert!(msgs.is_empty(), "schema violations: {msgs:?}");
}

fn column(v: &Value, name: &str) -> Vec<String> {
    let i = v["columns"].as_array().unwrap().iter().position(|c| c == name).unwrap();
    v["rows"].as_array().unwrap().iter().map(|r| r[i].as_str().unwrap().to_string()).collect()
}

#[test]
fn poly_is_monic_and_exact() {
    let (v, o) = json(&["poly", "--family", "bqj", "--n", "2"]);
    assert!(o.status.success());
    assert_schema(&v);
    assert_eq!(column(&v, "coefficient"), ["-80/869", "6/11", "1"]);
    assert_eq!(v["params"]["n"], "2");
}

#[test]
fn degree_zero_is_one() {
    for fam in ["qr", "bqj", "qm", "asc"] {
        let (v, o) = json(&["poly", "--family", fam, "--n", "0"]);
        assert!(o.status.success(), "{fam}");
        assert_eq!(column(&v, "coefficient"), ["1"], "{fam}");
    }
}

#[test]
fn inadmissible_parameters_warn_but_compute() {
    let o = qaskey(&["poly", "--family", "asc", "--c", "1", "--d", "2", "--n", "3"]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("warning:"));
    assert!(stdout(&o).contains("coefficient"));
}

#[test]
fn malformed_input_exits_2() {
    for args in [
        &["poly", "--q", "1/0"][..],
        &["poly", "--q", "3/2"],
        &["poly", "--q", "abc"],
        &["poly", "--family", "nope"],
        &["multipoly", "--lambda", "1,2"],
    ] {
        let o = qaskey(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn sigma_is_triangular_with_known_diagonal() {
    // q-Meixner fixture has c = 3/2, so the diagonal is (2/3)^{|λ|}.
    let (v, o) = json(&["sigma", "--family", "qm", "--degree", "3"]);
    assert!(o.status.success());
    assert_schema(&v);
    let lam = column(&v, "lambda");
    let mu = column(&v, "mu");
    let sig = column(&v, "sigma");
    let mut diag = 0;
    for i in 0..lam.len() {
        let l: qaskey::Partition = lam[i].parse().unwrap();
        let m: qaskey::Partition = mu[i].parse().unwrap();
        assert!(l.contains(&m), "off-cone entry {l} / {m}");
        if l == m {
            diag += 1;
            let want = qaskey::Scalar::frac(2, 3).pow(l.size() as i64);
            assert_eq!(sig[i], want.to_string(), "{l}");
        }
    }
    // One diagonal entry per partition of size ≤ 3.
    assert_eq!(diag, 1 + 1 + 2 + 3);
}

#[test]
fn json_round_trips_through_csv() {
    let (v, _) = json(&["sigma", "--degree", "2"]);
    let o = qaskey(&["sigma", "--degree", "2", "--format", "csv"]);
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let header: Vec<String> = r.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(serde_json::to_value(&header).unwrap(), v["columns"]);
    let rows: Vec<Vec<String>> = r.records().map(|x| x.unwrap().iter().map(String::from).collect()).collect();
    assert_eq!(serde_json::to_value(&rows).unwrap(), v["rows"]);
}

#[test]
fn exact_suites_pass() {
    for suite in ["pochhammer", "schur", "cauchy", "sigma-n"] {
        let (v, o) = json(&["verify", suite]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
        assert_schema(&v);
        assert_eq!(v["status"], "pass");
        assert!(column(&v, "status").iter().all(|s| s == "exact-pass"), "{suite}");
    }
}

#[test]
fn corrupted_sigma_fails_with_location() {
    let (v, o) = json(&["verify", "sigma-n", "--corrupt-sigma", "2,1:1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_schema(&v);
    assert_eq!(v["status"], "fail");
    assert!(column(&v, "failure").iter().any(|f| f.contains("λ = [2,1], μ = [1]")));
}

#[test]
fn unknown_suite_exits_2() {
    let o = qaskey(&["verify", "no-such-suite"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!stderr(&o).is_empty());
}

#[test]
fn limit_errors_decay_geometrically() {
    let (v, o) = json(&["limits", "--transition", "bqj-to-qm"]);
    assert_eq!(o.status.code(), Some(0));
    assert_schema(&v);
    let errs: Vec<f64> = column(&v, "error").iter().map(|e| e.parse().unwrap()).collect();
    assert!(errs.len() >= 3);
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
    let fitted: f64 = v["params"]["fitted_ratio"].as_str().unwrap().parse().unwrap();
    assert!((fitted - 0.5).abs() < 0.05, "{fitted}");
}

#[test]
fn one_step_path_warns() {
    let o = qaskey(&["limits", "--transition", "bqj-to-qm", "--steps", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning:"));
}

#[test]
fn thread_count_does_not_change_results() {
    let args = ["verify", "cauchy", "--format", "json"];
    let one = Command::new(env!("CARGO_BIN_EXE_qaskey")).args(args).env("QASKEY_THREADS", "1").output().unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_qaskey")).args(args).env("QASKEY_THREADS", "4").output().unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_qaskey")).args(args).env("QASKEY_THREADS", "zero").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn output_file_receives_the_result() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("phi.json");
    let o = qaskey(&["poly", "--n", "2", "--format", "json", "--output", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_schema(&v);
    assert_eq!(v["command"], "poly");
}

#[test]
fn remaining_commands_match_the_schema() {
    for args in [
        &["multipoly", "--lambda", "2,1", "--n", "3"][..],
        &["symfunc", "--lambda", "1", "--degree", "2"],
        &["symfunc", "--lambda", "1", "--degree", "2", "--interp", "a"],
        &["weights", "--family", "qr", "--l", "1", "--r", "-2"],
        &["measure", "--family", "qr", "--l", "1", "--r", "-2", "--n", "3"],
        &["limits", "--transition", "bqj-to-qm", "--quantity", "sigma", "--lambda", "1", "--mu", ""],
    ] {
        let (v, o) = json(args);
        assert!(o.status.code().is_some_and(|c| c <= 1), "{args:?}: {}", stderr(&o));
        assert_schema(&v);
    }
}
