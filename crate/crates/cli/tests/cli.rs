use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use connexive::connectives::Registry;
use connexive::format::{write_scinf, EnvRef};
use connexive::witnesses::thm5_witness;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_connexive"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus/nc").join(name)
}

const DEFS: &str = "connective X/2 { group { A1; -A2 } group { (A1 => A2) } }\n";

#[test]
fn parse_collapses_double_refutation() {
    let o = run(&["parse", "--p"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "p\ndegree 0\n");
    let o = run(&["parse", "-(p => -q)"]);
    assert_eq!(stdout(&o), "-(p => -q)\ndegree 1\n");
}

#[test]
fn parse_error_is_usage() {
    let o = run(&["parse", "p &"]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
}

#[test]
fn theses_are_found_and_emitted_proofs_check() {
    let dir = tempfile::tempdir().unwrap();
    for (i, s) in
        ["=> ~(~p -> p)", "=> ~(p -> ~p)", "=> (p -> q) -> ~(p -> ~q)", "=> (p -> ~q) -> ~(p -> q)"].iter().enumerate()
    {
        let out = dir.path().join(format!("t{i}.deriv"));
        let o = run(&["prove", s, "--emit", out.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{s}");
        let o = run(&["check", out.to_str().unwrap(), "--calculus", "g3c"]);
        assert_eq!(code(&o), 0, "{s}");
        assert_eq!(stdout(&o), "accepted\n");
    }
}

#[test]
fn unprovable_exits_one() {
    let o = run(&["prove", "=> (p -> q) -> (q -> p)"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("unprovable"));
    assert_eq!(code(&run(&["prove", "p, ~p => q"])), 1);
    assert_eq!(code(&run(&["prove", "~(p -> q) => p"])), 1);
}

#[test]
fn budget_exceeded_exits_three() {
    let o = run(&["prove", "=> (p -> q) -> ~(p -> ~q)", "--budget", "1"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn hypotheses_are_used() {
    assert_eq!(code(&run(&["prove", "p, r => q & r", "--hyp", "p => q"])), 0);
    assert_eq!(code(&run(&["prove", "p, r => q & r"])), 1);
}

#[test]
fn emitted_hypothetical_proof_checks() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("h.deriv");
    let o = run(&["prove", "p => q | r", "--hyp", "p => q", "--emit", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&run(&["check", out.to_str().unwrap(), "--calculus", "g3c"])), 0);
}

#[test]
fn nc_corpus_checks() {
    let o = run(&["check", corpus("boethius.deriv").to_str().unwrap(), "--calculus", "nc"]);
    assert_eq!(code(&o), 0);
    let o = run(&["check", corpus("n4-negated-implication.deriv").to_str().unwrap(), "--calculus", "nc"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("N4"));
}

#[test]
fn wrong_calculus_and_missing_file_are_usage_errors() {
    let f = corpus("aristotle.deriv");
    assert_eq!(code(&run(&["check", f.to_str().unwrap(), "--calculus", "g3c"])), 2);
    assert_eq!(code(&run(&["check", "/nonexistent/x.deriv", "--calculus", "nc"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn scinf_check_echoes_env_hash() {
    let dir = tempfile::tempdir().unwrap();
    let defs = dir.path().join("defs.txt");
    fs::write(&defs, DEFS).unwrap();
    let env = Registry::from_text(DEFS).unwrap();
    let hash = env.env_hash();
    let w = thm5_witness(env.get("X").unwrap());
    let file = dir.path().join("w.deriv");
    let r = EnvRef { path: "defs.txt".into(), hash: hash.clone() };
    fs::write(&file, write_scinf(&w.fwd, Some(&r))).unwrap();

    let o = run(&["check", file.to_str().unwrap(), "--calculus", "scinf"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), format!("env {hash}\naccepted\n"));

    // Different definitions under --defs fail the recorded hash.
    let other = dir.path().join("other.txt");
    fs::write(&other, "connective X/2 { group { A1 } }\n").unwrap();
    let o = run(&["check", file.to_str().unwrap(), "--calculus", "scinf", "--defs", other.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn define_prints_rules_and_formula() {
    let dir = tempfile::tempdir().unwrap();
    let defs = dir.path().join("defs.txt");
    fs::write(&defs, DEFS).unwrap();
    let o = run(&["define", defs.to_str().unwrap(), "--formula"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("  X(A1, A2) <=>s A1 & ~A2 | (A1 -> A2)\n"));
    let o = run(&["define", defs.to_str().unwrap(), "--rules"]);
    let text = stdout(&o);
    assert!(text.contains("I:X:1: [Δ => A1] [Δ => -A2] / Δ => X(A1, A2)"));
    assert!(!text.contains("<=>s"));
}

#[test]
fn verify_is_deterministic_without_timings() {
    let dir = tempfile::tempdir().unwrap();
    let defs = dir.path().join("defs.txt");
    fs::write(&defs, DEFS).unwrap();
    let a = run(&["verify", defs.to_str().unwrap(), "--no-timings"]);
    let b = run(&["verify", defs.to_str().unwrap(), "--no-timings"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let j = run(&["verify", defs.to_str().unwrap(), "--no-timings", "--json"]);
    for line in stdout(&j).lines() {
        assert!(line.starts_with('{') && line.ends_with('}'), "{line}");
        assert!(!line.contains("millis"));
    }
}

#[test]
fn prove_is_deterministic() {
    let a = run(&["prove", "=> (p -> ~q) -> ~(p -> q)", "--emit", "-"]);
    let b = run(&["prove", "=> (p -> ~q) -> ~(p -> q)", "--emit", "-"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn theses_table_passes() {
    let o = run(&["theses", "--no-timings"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 11);
    assert!(text.ends_with("10/10 criteria passed\n"));
}
