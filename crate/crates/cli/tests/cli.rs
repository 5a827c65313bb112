//! Runs the binary end to end.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grasstwist"))
        .args(args)
        .env_remove("GRASSTWIST_SEED")
        .env_remove("GRASSTWIST_PRIME")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8")
}

#[test]
fn dimers_with_boundary_346() {
    let o = run(&["dimer", "enumerate", "--graph", &fixture("gr37_top.json"), "--boundary", "3,4,6"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn pathless_webs_for_seven_black_one_white() {
    let o = run(&["web", "enumerate", "--boundary", "BBBBBBBW", "--pathless"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 10);
    let all = run(&["web", "enumerate", "--boundary", "BBBBBBBW"]);
    assert_eq!(stdout(&all).lines().count(), 21);
}

#[test]
fn verify_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<String> = (0..2).map(|i| dir.path().join(format!("r{i}.txt")).display().to_string()).collect();
    // the short alias selects the same suite
    for (p, suite) in paths.iter().zip(["twist-table", "table1"]) {
        let o = run(&["verify", "--suite", suite, "--seed", "7", "--out", p]);
        assert_eq!(o.status.code(), Some(0));
    }
    let a = std::fs::read(&paths[0]).unwrap();
    assert_eq!(a, std::fs::read(&paths[1]).unwrap());
    assert!(String::from_utf8(a).unwrap().starts_with("# grasstwist-report/1\n# seed=7 "));
}

#[test]
fn csv_reports_and_env_overrides() {
    let o = Command::new(env!("CARGO_BIN_EXE_grasstwist"))
        .args(["verify", "--suite", "kk", "--format", "csv"])
        .env("GRASSTWIST_SEED", "11")
        .env("GRASSTWIST_PRIME", "1000000007")
        .output()
        .unwrap();
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().next().unwrap().starts_with("schema,seed,prime,"), "{text}");
    assert!(text.contains("grasstwist-report/1,11,1000000007,kk,"), "{text}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--prime", "100"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["dimer", "enumerate", "--graph", "/nonexistent", "--boundary", "1,2,3"]).status.code(), Some(2));
}

#[test]
fn quiver_csv_for_gr36() {
    let o = run(&["quiver", "explore", "--k", "3", "--n", "6", "--identify"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 23);
    assert!(text.lines().any(|l| l.contains(",X@") || l.contains(",-X@")), "{text}");
    assert!(text.lines().any(|l| l.contains(",Y@") || l.contains(",-Y@")), "{text}");
}

#[test]
fn plabic_round_trip_and_square_move() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json").display().to_string();
    let moved = dir.path().join("m.json").display().to_string();
    assert!(run(&["plabic", "build", "--k", "3", "--n", "6", "--out", &g]).status.success());
    let v = run(&["plabic", "validate", "--graph", &g]);
    assert!(stdout(&v).contains("trip permutation 4 5 6 1 2 3"), "{}", stdout(&v));
    let labels = stdout(&run(&["plabic", "labels", "--graph", &g]));
    assert_eq!(labels.lines().count(), 10);
    assert!(run(&["plabic", "square-move", "--graph", &g, "--face", "256", "--out", &moved]).status.success());
    let after = stdout(&run(&["plabic", "labels", "--graph", &moved]));
    assert_ne!(labels, after);
    assert_eq!(after.lines().count(), 10);
    let bad = run(&["plabic", "square-move", "--graph", &g, "--face", "245", "--out", &moved]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn triple_dimer_to_web_and_back() {
    let graph = fixture("gr36_top.json");
    let o = run(&["dimer", "enumerate", "--graph", &graph, "--fold", "3", "--boundary", "1,2,3,4,4,5,5,6,6"]);
    assert!(o.status.success());
    let first = stdout(&o).lines().next().expect("some triple dimer").split('\t').next().unwrap().to_string();
    let w = run(&["web", "from-dimer", "--graph", &graph, "--dimer", &first]);
    assert!(w.status.success(), "{}", String::from_utf8_lossy(&w.stderr));
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("w.json");
    std::fs::write(&file, &w.stdout).unwrap();
    let file = file.display().to_string();
    assert!(run(&["web", "reduce", "--web", &file]).status.success());
    let c = run(&["web", "color-count", "--web", &file, "--sets", "123,456,456"]);
    assert!(c.status.success(), "{}", String::from_utf8_lossy(&c.stderr));
    assert!(stdout(&c).trim().parse::<u64>().unwrap() >= 1);
}

#[test]
fn kk_listing() {
    let o = run(&["web", "kk", "--tableau", "2 5 6 / 1 3 4"]);
    assert!(stdout(&o).contains("{1,2}{3,6}{4,5}"));
    assert_eq!(stdout(&run(&["web", "kk", "--shape", "3,3"])).lines().count(), 5);
}
