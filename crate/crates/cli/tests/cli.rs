use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use domchrom_core::io::{parse_tree_file, report_from_json};

fn domchrom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_domchrom"))
        .args(args)
        .env_remove("DOMCHROM_JOBS")
        .output()
        .unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn solve_directed_path() {
    let dir = tempfile::tempdir().unwrap();
    let tree = write(dir.path(), "p5.tree", "n 5\n0 1\n1 2\n2 3\n3 4\n");
    let out = domchrom(&["solve", &tree]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["result"]["chi"], 5);
    assert_eq!(value["instance"], "5:0-1,1-2,2-3,3-4");
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let tree = write(dir.path(), "t.tree", "# P3\nn 3\n0 1\n1 2\n");
    let good = write(dir.path(), "good.coloring", "0 1\n1 2\n2 3\n");
    let bad = write(dir.path(), "bad.coloring", "0 1\n1 1\n2 2\n");
    assert_eq!(domchrom(&["verify", &tree, &good]).status.code(), Some(0));
    let out = domchrom(&["verify", &tree, &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("same color"));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cyclic = write(dir.path(), "bad.tree", "n 3\n0 1\n1 0\n");
    assert_eq!(domchrom(&["solve", &cyclic]).status.code(), Some(2));
    assert_eq!(
        domchrom(&["solve", "/nonexistent/file"]).status.code(),
        Some(2)
    );
    assert_eq!(
        domchrom(&["invariance", "--max-n", "11"]).status.code(),
        Some(2)
    );
    assert_eq!(domchrom(&["orientations", &cyclic]).status.code(), Some(2));
    assert_eq!(domchrom(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        domchrom(&["star", "--m-max", "2", "--jobs", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn gen_round_trips_through_tree_files() {
    let out = domchrom(&[
        "gen",
        "caterpillar",
        "--spine-len",
        "4",
        "--legs",
        "1:2,2:1",
        "--leg-mask",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let t = parse_tree_file(&stdout(&out)).unwrap();
    assert_eq!(t.n(), 7);
    let dot = stdout(&domchrom(&[
        "gen", "gs", "--m", "2", "--k", "2", "--emit", "dot",
    ]));
    assert!(dot.starts_with("digraph tree {") && dot.contains("0 -> 1;"));
    let a = stdout(&domchrom(&["gen", "random", "--n", "9", "--seed", "3"]));
    let b = stdout(&domchrom(&["--seed", "3", "gen", "random", "--n", "9"]));
    assert_eq!(a, b);
    assert_eq!(
        domchrom(&["gen", "star", "--m", "2", "--mask", "4"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn orientation_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let tree = write(dir.path(), "p6.tree", "n 6\n0 1\n1 2\n2 3\n3 4\n4 5\n");
    let report = report_from_json(&stdout(&domchrom(&["orientations", &tree, "--min"]))).unwrap();
    assert_eq!(report.summary.witnesses[0].chi, 3);
    assert_eq!(report.summary.instances_checked, 32);
    let all = report_from_json(&stdout(&domchrom(&["orientations", &tree, "--all"]))).unwrap();
    assert_eq!(all.records.len(), 32);
}

#[test]
fn campaigns_write_reports() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("star.json");
    let out = domchrom(&["star", "--m-max", "4", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let report = report_from_json(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report.version, 1);
    assert_eq!(report.campaign, "star");
    assert!(report.summary.holds_at_this_scale);

    let csv = stdout(&domchrom(&["star", "--m-max", "2", "--format", "csv"]));
    assert!(csv.starts_with("kind,id,m,mask,instance,chi,formula,uniform\n"));

    // Conjecture disagreements are findings, not failures.
    let out = domchrom(&["conjecture", "--m-max", "2", "--k-max", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let report = report_from_json(&stdout(&out)).unwrap();
    assert!(!report.summary.findings.is_empty());
}

#[test]
fn failing_campaign_exits_one() {
    let out = domchrom(&["invariance", "--max-n", "5"]);
    assert_eq!(out.status.code(), Some(1));
    let report = report_from_json(&stdout(&out)).unwrap();
    assert!(!report.summary.holds_at_this_scale);
    assert_eq!(
        domchrom(&["invariance", "--max-n", "4"]).status.code(),
        Some(0)
    );
}

#[test]
fn jobs_from_environment() {
    let run = |jobs: &str| {
        Command::new(env!("CARGO_BIN_EXE_domchrom"))
            .args(["leafdel", "--max-n", "5"])
            .env("DOMCHROM_JOBS", jobs)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("3"));
}
