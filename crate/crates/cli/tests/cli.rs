use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use helly_cli::bench::{read_csv, CSV_HEADER};

fn helly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_helly")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn center_median_radius_on_p4() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = write(dir.path(), "p4.txt", "# path\np 4 3\n0 1\n1 2\n2 3\n");
    let o = helly(&["center", "--graph", s(&p4)]);
    assert_eq!(o.status.code(), Some(0));
    let line = stdout(&o);
    assert!(line == "vertex 1 ecc 2\n" || line == "vertex 2 ecc 2\n", "{line}");
    let o = helly(&["median", "--graph", s(&p4)]);
    assert_eq!(stdout(&o), "medians 1 2 td 4\n");
    let o = helly(&["radius", "--graph", s(&p4), "--k", "2"]);
    assert_eq!(stdout(&o), "R 2 guarantee [2, 2]\n");
    let o = helly(&["radius", "--graph", s(&p4), "--k", "2", "--alpha", "1", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("oracle agrees"));
}

#[test]
fn costs_change_the_center() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = write(dir.path(), "p4.txt", "p 4 3\n0 1\n1 2\n2 3\n");
    let costs = write(dir.path(), "c.txt", "0 10\n");
    let o = helly(&["center", "--graph", s(&p4), "--costs", s(&costs), "--verify"]);
    assert_eq!(stdout(&o), "vertex 0 ecc 3\noracle agrees: min ecc 3\n");
    let bad = write(dir.path(), "bad.txt", "2 -1\n");
    let o = helly(&["center", "--graph", s(&p4), "--costs", s(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains(":1:"));
}

#[test]
fn check_reports_c4_witness() {
    let dir = tempfile::tempdir().unwrap();
    let c4 = write(dir.path(), "c4.txt", "p 4 4\n0 1\n1 2\n2 3\n3 0\n");
    let o = helly(&["check", "--graph", s(&c4), "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("holds=false"));
    let witness: Vec<usize> = out
        .lines()
        .find_map(|l| l.strip_prefix("witness "))
        .unwrap()
        .split(' ')
        .map(|x| x.parse().unwrap())
        .collect();
    assert_eq!(witness.len(), 3);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let split = write(dir.path(), "split.txt", "p 3 1\n0 1\n");
    let o = helly(&["center", "--graph", s(&split)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not connected"));
    let o = helly(&["center", "--graph", s(&dir.path().join("missing.txt"))]);
    assert_eq!(o.status.code(), Some(1));
    let bad = write(dir.path(), "bad.txt", "p 3 2\n0 1\n1 q\n");
    let o = helly(&["center", "--graph", s(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains(":3:"));
    // An induced 6-cycle breaks the gate contract.
    let c6 = write(dir.path(), "c6.txt", "p 6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n");
    let o = helly(&["center", "--graph", s(&c6)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("gate not found"));
    assert_eq!(helly(&["center"]).status.code(), Some(1));
    assert_eq!(helly(&["--help"]).status.code(), Some(0));
}

#[test]
fn gen_round_trips_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.txt");
    for family in ["tree", "interval", "king-grid", "chordal"] {
        let o = helly(&["gen", "--family", family, "--n", "30", "--seed", "4", "--out", s(&out)]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let first = fs::read_to_string(&out).unwrap();
        let again = stdout(&helly(&["gen", "--family", family, "--n", "30", "--seed", "4"]));
        assert_eq!(first, again);
        let g = helly_cli::parse_graph_file(&out).unwrap();
        assert!((25..=36).contains(&g.n()));
    }
    let o = helly(&["gen", "--family", "king-grid", "--rows", "3", "--cols", "7"]);
    assert!(stdout(&o).contains("p 21 "));
    assert_eq!(helly(&["gen", "--family", "grid", "--n", "4"]).status.code(), Some(1));
}

#[test]
fn same_seed_same_output() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    helly(&["gen", "--family", "interval", "--n", "80", "--seed", "2", "--out", s(&g)]);
    for cmd in ["center", "median"] {
        let a = helly(&[cmd, "--graph", s(&g), "--seed", "9"]);
        let b = helly(&[cmd, "--graph", s(&g), "--seed", "9", "--threads", "2"]);
        assert_eq!(stdout(&a), stdout(&b));
    }
    let a = helly(&["radius", "--graph", s(&g), "--k", "2", "--eps-scale", "2"]);
    let b = helly(&["radius", "--graph", s(&g), "--k", "2", "--eps-scale", "2"]);
    assert_eq!(stdout(&a), stdout(&b));
    let r = helly(&["center", "--graph", s(&g), "--seed", "random"]);
    assert_eq!(r.status.code(), Some(0));
    assert!(stderr(&r).starts_with("seed "));
}

#[test]
fn bench_writes_parseable_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b.csv");
    let o = helly(&[
        "bench", "--family", "king-grid", "--sizes", "25,100", "--seeds", "1,2,3", "--commands", "center,median,radius",
        "--verify", "--out", s(&out),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().next(), Some(CSV_HEADER));
    let rows = read_csv(text.as_bytes()).unwrap();
    assert_eq!(rows.len(), 18);
    assert!(rows.iter().all(|r| r.verdict == "agree" && r.family == "king-grid"));
    assert_eq!(rows[0].n, 25);
    assert_eq!(rows[17].n, 100);
}
