//! End-to-end tests of the `fid` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const P3: &str = "# a path on three vertices\nvocab E/2\norder 3\ngraph\nE 0 1\nE 1 2\n";
const K3: &str = "vocab E/2\norder 3\ngraph\nE 0 1\nE 1 2\nE 0 2\n";
const H5: &str = "vocab E/2\norder 5\ngraph\nE 0 1\nE 1 2\n";

fn fid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fid")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_reports_invariants() {
    let dir = TempDir::new().unwrap();
    let p3 = file(&dir, "p3.fos", P3);
    let o = fid(&["analyze", s(&p3)]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("sigma: 2"), "{out}");
    assert!(out.contains("delta: 2"), "{out}");
    assert!(out.contains("rho: 3"), "{out}");
    assert!(out.contains("X_1:"), "{out}");

    let o = fid(&["analyze", s(&p3), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["invariants"]["sigma"], 2);
    assert_eq!(v["invariants"]["delta_exact"], 2);
}

#[test]
fn synth_then_verify_the_exceptional_graph() {
    let dir = TempDir::new().unwrap();
    let h5 = file(&dir, "h5.fos", H5);
    let out = dir.path().join("h5.fof");
    let o = fid(&["synth", s(&h5), "--method", "graph", "-o", s(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("4 quantifiers"));
    let o = fid(&["verify", s(&h5), s(&out), "--scope", "order"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("pass"));
}

#[test]
fn synth_to_stdout_is_a_parseable_formula() {
    let dir = TempDir::new().unwrap();
    let p3 = file(&dir, "p3.fos", P3);
    for method in ["naive-id", "naive-def", "rho", "auto", "graph"] {
        let o = fid(&["synth", s(&p3), "--method", method]);
        assert_eq!(o.status.code(), Some(0), "{method}");
        let f = file(&dir, "p3.fof", &stdout(&o));
        let scope = if method == "naive-def" { "upto:4" } else { "order" };
        let o = fid(&["verify", s(&p3), s(&f), "--scope", scope]);
        assert_eq!(o.status.code(), Some(0), "{method}: {}", stdout(&o));
    }
    // σ(P3) = 2 is below k + 1, so the σ construction does not apply.
    assert_eq!(fid(&["synth", s(&p3), "--method", "sigma"]).status.code(), Some(2));
    let empty = file(&dir, "e4.fos", "vocab E/2\norder 4\ngraph\n");
    let o = fid(&["synth", s(&empty), "--method", "sigma"]);
    assert_eq!(o.status.code(), Some(0));
    let f = file(&dir, "e4.fof", &stdout(&o));
    assert_eq!(fid(&["verify", s(&empty), s(&f)]).status.code(), Some(0));
}

#[test]
fn failed_verification_prints_a_counterexample() {
    let dir = TempDir::new().unwrap();
    let p3 = file(&dir, "p3.fos", P3);
    let f = file(&dir, "weak.fof", "EX x. EX y. E(x, y)\n");
    let o = fid(&["verify", s(&p3), s(&f)]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("fail"));
    assert!(out.contains("counterexample:\nvocab E/2\norder 3"), "{out}");
}

#[test]
fn game_prints_the_value() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (file(&dir, "a.fos", P3), file(&dir, "b.fos", K3));
    let o = fid(&["game", s(&a), s(&b), "--alternations", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2\n");
    let o = fid(&["game", s(&a), s(&a)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("isomorphic"));
    let o = fid(&["game", s(&a), s(&b), "--max-rounds", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn rank_enumerate_gen_and_base() {
    let dir = TempDir::new().unwrap();
    let p3 = file(&dir, "p3.fos", P3);
    let o = fid(&["rank", s(&p3)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("2\n"));

    let o = fid(&["enumerate", "--vocab", "E/2", "--order", "4", "--graphs", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], 11);

    let o = fid(&["gen", "gm", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("order 9"));
    let o = fid(&["gen", "mfmg", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("---"));

    let h5 = file(&dir, "h5.fos", H5);
    let o = fid(&["base", s(&h5)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Z:"));
}

#[test]
fn audit_is_independent_of_worker_count() {
    let one = fid(&["audit", "--vocab", "E/2", "--order", "4", "--graphs", "--json", "--workers", "1"]);
    let four = fid(&["audit", "--vocab", "E/2", "--order", "4", "--graphs", "--json", "--workers", "4"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let v: serde_json::Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_eq!(v["records"].as_array().unwrap().len(), 11);
}

#[test]
fn input_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let bad = file(&dir, "bad.fos", "vocab E/2\norder 2\nE 0 7\n");
    assert_eq!(fid(&["analyze", s(&bad)]).status.code(), Some(2));
    assert_eq!(fid(&["analyze", "/nonexistent/file.fos"]).status.code(), Some(2));
    assert_eq!(fid(&["analyze"]).status.code(), Some(2));
    assert_eq!(fid(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(fid(&["--workers", "0", "gen", "gm", "2"]).status.code(), Some(2));
    assert_eq!(fid(&["--unknown-flag", "gen", "gm", "2"]).status.code(), Some(2));
    let p3 = file(&dir, "p3.fos", P3);
    assert_eq!(fid(&["synth", s(&p3), "--method", "bogus"]).status.code(), Some(2));
    let f = file(&dir, "f.fof", "EX x. P(x)\n");
    assert_eq!(fid(&["verify", s(&p3), s(&f)]).status.code(), Some(2));
    assert_eq!(fid(&["verify", s(&p3), s(&f), "--scope", "upto:zero"]).status.code(), Some(2));
}

#[test]
fn run_is_callable_in_process() {
    assert_eq!(fid::cli::run(["fid", "--version"]), 0);
    assert_eq!(fid::cli::run(["fid", "gen", "gm", "0"]), 2);
}
