use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn ungar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ungar")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn error_class(out: &Output) -> String {
    let v: Value = serde_json::from_slice(&out.stderr).expect("stderr is a JSON error record");
    v["error"]["class"].as_str().unwrap().to_string()
}

#[test]
fn exact_dihedral_is_rational() {
    let out = ungar(&["exact", "--family", "cambrian-I2", "--m", "5", "--p", "1/2", "--json"]);
    let v = json(&out);
    assert_eq!(v["exact"]["rational"], "14/3");
    assert_eq!(v["states"], 7);
}

#[test]
fn solvers_agree_through_the_cli() {
    let a = json(&ungar(&["exact", "--family", "tamari", "--n", "4", "--json"]));
    let b = json(&ungar(&["exact", "--family", "tamari", "--n", "4", "--recursive", "--json"]));
    assert_eq!(a["exact"]["rational"], b["exact"]["rational"]);
}

#[test]
fn missing_parameter_exits_with_invalid_input() {
    let out = ungar(&["exact", "--family", "weak"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_class(&out), "invalid_input");
}

#[test]
fn bad_probability_exits_with_invalid_input() {
    let out = ungar(&["exact", "--family", "tamari", "--n", "3", "--p", "3/2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oversized_exact_run_exits_with_resource_limit() {
    let out = ungar(&["exact", "--family", "weak", "--n", "9"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(error_class(&out), "resource_limit");
}

#[test]
fn simulate_writes_csv_json_trace_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let out = ungar(&[
        "simulate", "--family", "weak", "--n", "12", "--trials", "40", "--seed", "3",
        "--snapshots", "0,2,4", "--csv", &p("trials.csv"), "--trace", &p("trace.csv"),
        "--plot", &p("fig.svg"), "--output", &p("run.json"),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(p("trials.csv")).unwrap();
    assert_eq!(csv.lines().count(), 41);
    let svg = fs::read_to_string(p("fig.svg")).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert_eq!(svg.matches("<circle").count(), 3 * 12);
    assert!(fs::read_to_string(p("trace.csv")).unwrap().lines().count() > 1);
    let v: Value = serde_json::from_str(&fs::read_to_string(p("run.json")).unwrap()).unwrap();
    assert_eq!(v["simulation"]["statistics"]["trials"], 40);
}

#[test]
fn thread_count_does_not_change_output() {
    let run = |t: &str| {
        ungar(&["simulate", "--family", "tamari", "--n", "7", "--trials", "300", "--seed", "11", "--threads", t, "--json"])
            .stdout
    };
    let one = run("1");
    assert!(!one.is_empty());
    assert_eq!(one, run("3"));
}

#[test]
fn toml_config_matches_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.toml");
    fs::write(&cfg, "family = \"chain\"\nmode = \"simulate\"\nn = 4\np = \"1/2\"\nseed = 5\ntrials = 200\n").unwrap();
    let a = json(&ungar(&["run", cfg.to_str().unwrap(), "--json"]));
    let b = json(&ungar(&[
        "simulate", "--family", "chain", "--n", "4", "--seed", "5", "--trials", "200", "--json",
    ]));
    assert_eq!(a, b);
}

#[test]
fn unknown_config_key_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    fs::write(&cfg, "family = \"chain\"\nn = 4\ncolour = \"red\"\n").unwrap();
    let out = ungar(&["run", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn custom_poset_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("v.txt");
    // a V: two elements above a common bottom
    fs::write(&f, "# V\n3\n0 1\n0 2\n").unwrap();
    let out = ungar(&["exact", "--family", "J-of-poset", "--poset", f.to_str().unwrap(), "--json"]);
    let v = json(&out);
    assert_eq!(v["states"], 5);
}

#[test]
fn lpp_rectangle_runs() {
    let v = json(&ungar(&["lpp", "--k", "3", "--l", "4", "--trials", "100", "--json"]));
    assert!(v["simulation"]["statistics"]["mean"].as_f64().unwrap() > 0.0);
}

#[test]
fn plot_subcommand_draws_panels() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("p.svg");
    let out = ungar(&["plot", "--perm", "3,1,2", "--perm", "1,2,3,4", "--output", f.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(fs::read_to_string(&f).unwrap().matches("<circle").count(), 7);
    let bad = ungar(&["plot", "--perm", "1,1", "--output", f.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn verify_reports_json_outcomes() {
    let v = json(&ungar(&["verify", "--suite", "nu-tamari", "--max-size", "6", "--json"]));
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 127);
    assert!(arr.iter().all(|o| o["status"] == "pass"));
    let out = ungar(&["verify", "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}
