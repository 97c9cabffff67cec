use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn digeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_digeo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn circuit_text(n: usize) -> String {
    let mut s = format!("n {n}\n");
    for i in 0..n {
        s.push_str(&format!("{i} {}\n", (i + 1) % n));
    }
    s
}

#[test]
fn analyze_circuit_and_paley() {
    let dir = tempfile::tempdir().unwrap();
    let c6 = write(dir.path(), "c6.txt", &circuit_text(6));
    let o = digeo(&["analyze", &c6]);
    assert!(o.status.success());
    let out = stdout(&o);
    for line in ["|Aut|=6", "diameter=5", "max_geodesic_s=5", "girth=6"] {
        assert!(out.lines().any(|l| l == line), "{line} missing from\n{out}");
    }

    let o = digeo(&[
        "cayley",
        "--group",
        "cyclic:7",
        "--conn",
        "1,2,4",
        "--analyze",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    for line in ["|Aut|=21", "max_arc_s=1", "max_geodesic_s=1"] {
        assert!(out.lines().any(|l| l == line), "{line} missing from\n{out}");
    }

    let o = digeo(&[
        "cayley",
        "--group",
        "cyclic:7",
        "--conn",
        "1,2,4",
        "--analyze",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["group_order"], 21);
}

#[test]
fn analyze_reports_disconnected_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "path.txt", "n 3\n0 1\n1 2\n");
    let o = digeo(&["analyze", &path]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("strongly_connected=false"));
    assert!(out.contains("note="));
}

#[test]
fn parse_errors_cite_line_and_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "n 3\n0 1\n1 x\n");
    let o = digeo(&["analyze", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));

    let o = digeo(&["cayley", "--group", "cyclic:5", "--conn", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = digeo(&["check", "--id", "L9.9", "--digraph", &bad]);
    assert_eq!(o.status.code(), Some(2));
    let o = digeo(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cayley_emit_round_trips() {
    let o = digeo(&["cayley", "--group", "cyclic:5", "--conn", "1", "--emit"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), circuit_text(5));

    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "c5.txt", &stdout(&o));
    let o2 = digeo(&["analyze", &path]);
    assert!(stdout(&o2).contains("|Aut|=5"));
}

#[test]
fn quotient_of_c6() {
    let dir = tempfile::tempdir().unwrap();
    let c6 = write(dir.path(), "c6.txt", &circuit_text(6));
    let g = write(dir.path(), "g.txt", "deg 6\n(0,1,2,3,4,5)\n");
    let n = write(dir.path(), "n.txt", "deg 6\n(0,3)(1,4)(2,5)\n");
    let prefix = dir.path().join("q");
    let o = digeo(&["quotient", &c6, &g, &n, "--out", prefix.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.contains("class=directed"));
    assert!(out.contains("orbits=3"));
    let q = fs::read_to_string(dir.path().join("q.digraph")).unwrap();
    assert_eq!(q, circuit_text(3));
    let blocks = fs::read_to_string(dir.path().join("q.blocks")).unwrap();
    assert!(blocks.starts_with("n 6\n"));

    let trivial = write(dir.path(), "t.txt", "deg 6\n");
    let o = digeo(&["quotient", &c6, &g, &trivial]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("orbits=6"));

    let s3 = write(dir.path(), "s3.txt", "deg 6\n(0,1,2,3,4,5)\n(1,5)(2,4)\n");
    let c6u = write(
        dir.path(),
        "c6u.txt",
        "n 6\n0 1\n1 0\n1 2\n2 1\n2 3\n3 2\n3 4\n4 3\n4 5\n5 4\n5 0\n0 5\n",
    );
    let refl = write(dir.path(), "r.txt", "deg 6\n(1,5)(2,4)\n");
    let o = digeo(&["quotient", &c6u, &s3, &refl]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not normal"));
}

#[test]
fn single_checks() {
    let dir = tempfile::tempdir().unwrap();
    let o = digeo(&["cayley", "--group", "cyclic:7", "--conn", "1,2,4"]);
    let p7 = write(dir.path(), "p7.txt", &stdout(&o));
    let o = digeo(&["check", "--id", "T1.4i", "--digraph", &p7]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("status=pass"));

    let c6 = write(dir.path(), "c6.txt", &circuit_text(6));
    let g = write(dir.path(), "g.txt", "deg 6\n(0,1,2,3,4,5)\n");
    let o = digeo(&[
        "check",
        "--id",
        "L3.1",
        "--digraph",
        &c6,
        "--group",
        &g,
        "--normal",
        &g,
        "--json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["status"], "not_applicable");
    assert_eq!(v["id"], "L3.1");
}

#[test]
fn small_survey_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "survey.toml",
        "circulant_n = [4, 8]\ncircuit_n = [3, 6]\npaley = [7]\ncayley_groups = []\nchecks = [\"T1.4i\", \"L4.1\"]\n",
    );
    let out = dir.path().join("records.jsonl");
    let o = digeo(&["survey", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    let summary = stdout(&o);
    assert!(summary.contains("failures=0"));
    let lines = fs::read_to_string(&out).unwrap();
    for line in lines.lines() {
        serde_json::from_str::<serde_json::Value>(line).unwrap();
    }
    let again = digeo(&["survey", "--config", &cfg, "--parallelism", "1"]);
    assert_eq!(stdout(&again), summary);

    let bad = write(dir.path(), "bad.toml", "valency = [0, 2]\n");
    assert_eq!(digeo(&["survey", "--config", &bad]).status.code(), Some(2));
}
