use std::process::{Command, Output};

use meanlab_cli::run;

fn meanlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_meanlab"))
        .args(args)
        .env_remove("MEANLAB_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn eval_prints_bare_value() {
    let o = meanlab(&["eval", "--mean", "P", "1", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1.90985931710274");
    let o = meanlab(&["eval", "--mean", "l", "1", "3"]);
    assert!(stdout(&o).starts_with("1.82047845325367"));
}

#[test]
fn eval_rejects_non_positive() {
    let o = meanlab(&["eval", "--mean", "A", "0", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("arguments must be positive"));
    let o = meanlab(&["eval", "--mean", "A", "-1", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("arguments must be positive"));
}

#[test]
fn unknown_mean_and_chain() {
    let o = meanlab(&["eval", "--mean", "QQ", "1", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown mean"));
    let o = meanlab(&["ineq", "run", "--chain", "hh-nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown chain"));
}

#[test]
fn malformed_grid() {
    let o = meanlab(&["seiffert", "--mean", "G", "--zgrid", "0.9:0.1:5"]);
    assert_eq!(o.status.code(), Some(2));
    let o = meanlab(&["harmonic", "check", "--mean", "G", "--zgrid", "0:1:5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("inside (0, 1)"));
}

#[test]
fn harmonic_verify_passes() {
    let o = meanlab(&["harmonic", "verify", "--mean", "L", "--repr", "H", "--pairs", "default", "--tol", "1e-9"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("20 checks: 20 passed, 0 failed"));
    // representer taken from the catalog
    let o = meanlab(&["harmonic", "verify", "--mean", "AGM"]);
    assert_eq!(o.status.code(), Some(0));
    let o = meanlab(&["harmonic", "verify", "--mean", "TANH"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn harmonic_verify_wrong_representer_fails() {
    let o = meanlab(&["harmonic", "verify", "--mean", "L", "--repr", "G"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn harmonic_check_exit_status() {
    let o = meanlab(&["harmonic", "check", "--mean", "SIN"]);
    assert_eq!(o.status.code(), Some(0));
    let o = meanlab(&["harmonic", "check", "--mean", "TANH", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("check,name,x,y,z,margin,pass"));
    assert_eq!(lines.count(), 99);
    assert!(out.contains(",false"));
}

#[test]
fn construct_emits_value_csv() {
    let o = meanlab(&["harmonic", "construct", "--mean", "G", "--z", "0.9"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("10.867061078079"));
    let o = meanlab(&["harmonic", "construct", "--mean", "P", "--zgrid", "0.1:0.5:5", "--format", "csv"]);
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows[0], "check,name,x,y,z,value");
    assert_eq!(rows.len(), 6);
    // z*arcsin'(z) = z/sqrt(1-z^2) at z = 0.5
    let last: f64 = rows[5].rsplit(',').next().unwrap().parse().unwrap();
    assert!((last - 0.5 / 0.75f64.sqrt()).abs() < 1e-12);
}

#[test]
fn seiffert_and_deform() {
    let o = meanlab(&["seiffert", "--mean", "H", "--z", "0.5"]);
    assert_eq!(stdout(&o).trim(), "0.666666666666667");
    let o = meanlab(&["deform", "--mean", "G", "--t", "0.5", "1", "3"]);
    assert_eq!(stdout(&o).trim(), "1.93649167310371");
    let o = meanlab(&["deform", "--mean", "G", "--t", "1.5", "1", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn ineq_run_on_file_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let pairs = dir.path().join("pairs.csv");
    std::fs::write(&pairs, "x,y\n1,3\n2,2\n0.001,1000\n").unwrap();
    let o = meanlab(&["ineq", "run", "--chain", "hh-L-H", "--pairs", pairs.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["summary"]["total"], 3);
    assert_eq!(doc["summary"]["pass"], 3);
    assert_eq!(doc["records"][1]["margin"].as_f64().unwrap(), 1e-10);

    std::fs::write(&pairs, "a,b\n1,3\n").unwrap();
    let o = meanlab(&["ineq", "run", "--chain", "hh-L-H", "--pairs", pairs.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("x,y"));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = meanlab(&["ineq", "run", "--chain", "hh-SIN", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["summary"]["total"], 110);

    let o = meanlab(&["eval", "--mean", "A", "1", "3", "--out", "/nonexistent/dir/x.txt"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cannot write"));
}

#[test]
fn tolerance_from_environment() {
    let strict = Command::new(env!("CARGO_BIN_EXE_meanlab"))
        .args(["harmonic", "verify", "--mean", "L"])
        .env("MEANLAB_TOL", "1e-30")
        .output()
        .unwrap();
    assert_eq!(strict.status.code(), Some(1));
    let flag_wins = Command::new(env!("CARGO_BIN_EXE_meanlab"))
        .args(["harmonic", "verify", "--mean", "L", "--tol", "1e-9"])
        .env("MEANLAB_TOL", "1e-30")
        .output()
        .unwrap();
    assert_eq!(flag_wins.status.code(), Some(0));
    let bad = Command::new(env!("CARGO_BIN_EXE_meanlab"))
        .args(["harmonic", "verify", "--mean", "L"])
        .env("MEANLAB_TOL", "tight")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn suite_single_criterion() {
    let o = meanlab(&["suite", "--criterion", "6", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 4);
    let o = meanlab(&["suite", "--criterion", "42"]);
    assert_eq!(o.status.code(), Some(2));
    let o = meanlab(&["suite"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn help_and_missing_subcommand() {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(run(["meanlab", "--help"], &mut out, &mut err), 0);
    assert!(String::from_utf8(out).unwrap().contains("harmonic"));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(run(["meanlab"], &mut out, &mut err), 2);
}

#[test]
fn chain_listing() {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(run(["meanlab", "ineq", "list"], &mut out, &mut err), 0);
    let text = String::from_utf8(out).unwrap();
    assert!(text.contains("hh-AGM-V") && text.contains("H(A,V) <= AGM <= V^{1/2}"));
}
