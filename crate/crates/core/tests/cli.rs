mod common;

use std::fs;
use std::process::{Command, Output};

use angleforge::counting::count_fast;
use angleforge::{construction, io as fio, ContextOptions};
use num_bigint::BigUint;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_angleforge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn error_kind(o: &Output) -> String {
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).expect("stderr is JSON");
    err["error"].as_str().unwrap().to_owned()
}

#[test]
fn normalize_prints_context() {
    let o = bin(&["normalize", "--tanpoly=-1,0,2", "--interval", "7/10,8/10"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "angleforge/1");
    assert_eq!(v["minpoly"], serde_json::json!(["-2", "0", "1"]));
    assert_eq!(v["b"], "2");
}

#[test]
fn normalized_context_feeds_other_commands() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ctx.json");
    let p = path.to_str().unwrap();
    let o = bin(&[
        "normalize",
        "--tanpoly=-1,0,2",
        "--interval=0.7,0.8",
        "--out",
        p,
    ]);
    assert!(o.status.success());
    // tan(theta) = 1/sqrt 2 = sqrt 2 / 2: rotating 2 by theta gives 2 + sqrt 2 i.
    let o = bin(&[
        "angle-check",
        "--context",
        p,
        "--p",
        "0,0;0,0",
        "--q",
        "2,0;0,0",
        "--r",
        "2,0;0,1",
    ]);
    assert_eq!(stdout(&o).trim(), "theta_plus");
}

#[test]
fn verify_ungar_row() {
    let o = bin(&["verify-ungar", "--d1-theta", "pi4", "--t", "1"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "t,n,distinct_directions,bound,status\n1,9,8,8,pass\n"
    );
    let o = bin(&["verify-ungar", "--preset", "sqrt2", "--t-max", "1"]);
    assert!(stdout(&o).ends_with(",pass\n"));
}

#[test]
fn dry_run_reports_expected_count() {
    let o = bin(&["construct", "--d1-theta", "pi4", "--t", "1", "--dry-run"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["expected_triples"], "36");
    assert!(v.get("triples").is_none());
}

#[test]
fn angle_check_classifies() {
    let run = |q: &str, r: &str| {
        stdout(&bin(&[
            "angle-check",
            "--d1-theta",
            "pi4",
            "--p",
            "0;0",
            "--q",
            q,
            "--r",
            r,
        ]))
    };
    assert_eq!(run("1;0", "1;1").trim(), "theta_plus");
    assert_eq!(run("1;1", "1;0").trim(), "theta_minus");
    assert_eq!(run("1;0", "0;1").trim(), "none");
}

#[test]
fn construct_count_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("points.json");
    let tri = dir.path().join("triples.json");
    let o = bin(&[
        "construct",
        "--preset",
        "pi4",
        "--t",
        "2",
        "--out",
        pts.to_str().unwrap(),
        "--triples-out",
        tri.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = bin(&[
        "count",
        "--input",
        pts.to_str().unwrap(),
        "--method",
        "both",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    let ctx = common::pi4();
    let family = construction::generate(&ctx, 2).unwrap();
    let in_memory = count_fast(&ctx, &family.points).unwrap().total;
    let n = family.points.len();
    assert_eq!(
        stdout(&o),
        format!("method,n,triples\nbrute,{n},{in_memory}\nfast,{n},{in_memory}\n")
    );
    // The union contains the constructed triples and possibly more.
    assert!(in_memory >= BigUint::from(family.len()));

    let (ctx2, read) =
        fio::read_point_set(fs::File::open(&pts).unwrap(), ContextOptions::default()).unwrap();
    assert_eq!(ctx2.minpoly(), ctx.minpoly());
    assert_eq!(read, family.points);
    let triples = fio::read_triples(fs::File::open(&tri).unwrap()).unwrap();
    assert_eq!(triples.triples, family.triples);
}

#[test]
fn sweep_csv() {
    let o = bin(&[
        "sweep",
        "--d1-theta",
        "pi4",
        "--t-max",
        "1",
        "--points",
        "grid",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,n,triples,n2logn,ratio"));
    assert!(lines.next().unwrap().starts_with("1,361,"));
    let o = bin(&[
        "sweep",
        "--d1-theta",
        "pi4",
        "--t-max",
        "1",
        "--fast-limit",
        "100",
    ]);
    assert_eq!(stdout(&o), "t,n,triples,n2logn,ratio\n1,361,skipped,,\n");
}

#[test]
fn input_errors_exit_one() {
    for args in [
        &["count", "--input", "/definitely/missing.json"][..],
        &["normalize", "--tanpoly", "1,2,x", "--interval", "0,1"],
        &["construct", "--t", "1"],
        &[
            "angle-check",
            "--d1-theta",
            "pi4",
            "--p",
            "0;0",
            "--q",
            "0;0",
            "--r",
            "1;1",
        ],
        &[
            "construct",
            "--preset",
            "sqrt2",
            "--t",
            "3",
            "--triple-budget",
            "10",
        ],
        &["--no-such-flag"],
    ] {
        let o = bin(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        let kind = error_kind(&o);
        assert!(kind == "input" || kind == "usage", "{args:?}: {kind}");
    }
}

#[test]
fn malformed_json_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, "{\"schema\": \"angleforge/1\", \"context\": ").unwrap();
    let o = bin(&["count", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_kind(&o), "input");
}

#[test]
fn brute_limit_is_enforced() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("points.json");
    assert!(bin(&[
        "construct",
        "--d1-theta",
        "pi4",
        "--t",
        "1",
        "--out",
        pts.to_str().unwrap()
    ])
    .status
    .success());
    let o = bin(&[
        "count",
        "--input",
        pts.to_str().unwrap(),
        "--method",
        "brute",
        "--brute-limit",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn help_and_version_succeed() {
    assert!(bin(&["--help"]).status.success());
    assert!(bin(&["--version"]).status.success());
}

#[test]
fn thread_count_does_not_change_results() {
    let one = bin(&["--threads", "1", "sweep", "--preset", "pi4", "--t-max", "1"]);
    let two = bin(&["--threads", "3", "sweep", "--preset", "pi4", "--t-max", "1"]);
    assert!(one.status.success());
    assert_eq!(one.stdout, two.stdout);
}
