use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_graph-stability"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn compute_edge_girth_on_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let c3 = write(dir.path(), "c3.txt", "3 3\n0 1\n1 2\n0 2\n");
    let o = run(&["compute", "--input", &c3, "--format", "edgelist", "--invariant", "girth", "--side", "edge", "--witness"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o), "1 [[0,1]]\n");

    let o = run(&["compute", "--input", &c3, "--format", "edgelist", "--invariant", "girth", "--side", "edge", "--json"]);
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["value"], 1);
    assert_eq!(v["graph6"], "Bw");
}

#[test]
fn compute_threshold_and_policy() {
    let dir = tempfile::tempdir().unwrap();
    let k1 = write(dir.path(), "k1.g6", "@\n");
    let proper = run(&["compute", "--input", &k1, "--invariant", "min_degree", "--side", "vertex"]);
    assert_eq!(stdout(&proper), "inf\n");
    let all = run(&["compute", "--input", &k1, "--invariant", "min_degree", "--side", "vertex", "--policy", "all"]);
    assert_eq!(stdout(&all), "1\n");

    let k3 = write(dir.path(), "k3.g6", "Bw\n");
    let o = run(&["compute", "--input", &k3, "--invariant", "chromatic", "--side", "vertex", "--threshold", "3"]);
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn malformed_graph6_is_a_usage_error_with_offset() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.g6", "D?\n");
    let o = run(&["compute", "--input", &bad, "--invariant", "girth", "--side", "vertex"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("byte 2"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_one_and_help_exits_zero() {
    assert_eq!(code(&run(&["compute", "--bogus"])), 1);
    assert_eq!(code(&run(&["frobnicate"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
    let dir = tempfile::tempdir().unwrap();
    let k2 = write(dir.path(), "k2.g6", "A_\n");
    assert_eq!(code(&run(&["compute", "--input", &k2, "--invariant", "nope", "--side", "edge"])), 1);
    assert_eq!(code(&run(&["decompose", "--input", &k2, "--invariant", "girth", "--theorem", "lemma1"])), 1);
}

#[test]
fn budget_overrun_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(dir.path(), "k4.g6", "C~\n");
    let o = run(&["compute", "--input", &k4, "--invariant", "girth", "--side", "edge", "--max-universe", "2^3"]);
    assert_eq!(code(&o), 2, "{}", stderr(&o));
}

#[test]
fn verify_lemma4_is_confirmed_only() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = run(&[
        "verify", "--n-max", "3", "--theorems", "lemma4", "--invariants", "max_degree", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["reports"].as_array().unwrap().len(), 8);
    let counts = &report["summary"]["per_tag"]["lemma4"];
    assert_eq!(counts["violated"], 0);
    assert!(counts["confirmed"].as_u64().unwrap() > 0);
    assert!(report["summary"].get("wall_time_ms").is_none());
}

#[test]
fn verify_exits_three_on_findings() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    // two isolated vertices: every component is unstable, yet deleting one changes i(G)
    let o = run(&[
        "verify", "--n-max", "2", "--theorems", "th5", "--invariants", "independent_sets", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let findings = report["summary"]["findings"].as_array().unwrap();
    assert_eq!(findings.len(), 1);
    assert_eq!(findings[0]["graph6"], "A?");
    assert_eq!(findings[0]["case"], "j_full");
}

#[test]
fn corpus_writes_graph6_lines() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.g6");
    let o = run(&["corpus", "--n-max", "3", "--mode", "exhaustive", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 8);
    assert_eq!(text.lines().next(), Some("B?"));
    assert_eq!(text.lines().last(), Some("Bw"));
}

#[test]
fn decompose_bounds_and_beta_prime() {
    let dir = tempfile::tempdir().unwrap();
    // C3 ⊔ C3
    let g = write(dir.path(), "g.txt", "6 6\n0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n");
    let o = run(&["decompose", "--input", &g, "--format", "edgelist", "--invariant", "girth", "--theorem", "th118"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["result"]["value"], 2);
    assert_eq!(v["oracle"], 2);

    let o = run(&["bounds", "--input", &g, "--format", "edgelist", "--invariant", "chromatic", "--theorems", "th13,lemma2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    assert!(lines.iter().all(|l| l["verdict"] == "confirmed"));

    let o = run(&["beta-prime", "--input", &g, "--format", "edgelist", "--invariant", "girth"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("2 "));
}
