use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_garside")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn normal_forms_and_lattice() {
    assert_eq!(stdout(&["nf", "--germ", "wreath", "a.bc"]), "D^1\n");
    assert_eq!(stdout(&["nf", "--germ", "wreath", "a.a.c"]), "ac | b\n");
    assert_eq!(stdout(&["nf", "--germ", "wreath", "1"]), "1\n");
    assert_eq!(stdout(&["gcd", "--germ", "wreath", "a.c", "b.c"]), "c\n");
    assert_eq!(stdout(&["gcd", "--germ", "wreath", "a", "b"]), "1\n");
    assert_eq!(stdout(&["lcm", "--germ", "abelian:2", "e1", "e2"]), "D^1\n");
    assert_eq!(stdout(&["divides", "--germ", "wreath", "c", "a.c"]), "true\n");
    assert_eq!(stdout(&["divides", "--germ", "wreath", "--right", "a", "a.c"]), "false\n");
    assert_eq!(stdout(&["divides", "--germ", "wreath", "--right", "c", "a.c"]), "true\n");
}

#[test]
fn quasicentre_commands() {
    assert_eq!(stdout(&["pure", "--germ", "braid:3"]), "delta-pure: true\nclasses: 1\n");
    assert_eq!(stdout(&["classes", "--germ", "wreath"]), "{a,b} -> ab\n{c} -> c\n");
    assert_eq!(stdout(&["deltas", "--germ", "wreath"]), "a -> ab\nb -> ab\nc -> c\n");
}

#[test]
fn structure_commands() {
    let w = ["--germ", "wreath", "--left", "a,b"];
    let with = |extra: &[&str]| stdout(&[extra, &w[..]].concat());
    assert_eq!(with(&["merge-nf", "a|a", "c"]), "ac | b\n");
    assert_eq!(with(&["split-nf", "ac|b"]), "G: a | a\nH: D^1\n");
    assert_eq!(with(&["gh", "a.a.c"]), "G: a | a\nH: c\n");
    assert_eq!(with(&["hg", "a.a.c"]), "H: c\nG: b | b\n");
    assert_eq!(with(&["act", "--op", "rr", "--h", "c", "--g", "a"]), "b\n");
    assert_eq!(with(&["act", "--op", "rr-inv", "--h", "c", "--g", "b"]), "a\n");
    assert!(with(&["decompose"]).contains("Delta_G: ab\nDelta_H: c\n"));
}

#[test]
fn automaton_exports() {
    let tsv = stdout(&["automaton", "--germ", "wreath", "--format", "tsv"]);
    assert!(tsv.starts_with("state\tletter\tnext\nstart\ta\ta\n"));
    let dot = stdout(&["automaton", "--germ", "wreath", "--left", "a,b", "--lang", "H", "--variant", "full"]);
    assert!(dot.contains("q1 -> q1 [label=\"c\"]"));
    assert_eq!(stdout(&["count", "--germ", "abelian:1", "--n", "3"]), "0\t1\n1\t0\n2\t0\n3\t0\n");
    assert_eq!(
        stdout(&["count", "--germ", "abelian:1", "--n", "2", "--variant", "full"]),
        "0\t1\n1\t1\n2\t1\n"
    );
}

#[test]
fn check_runs_suites() {
    let out = stdout(&["check", "--germ", "wreath", "--left", "a,b", "--suite", "nf-criteria"]);
    assert!(out.contains("nf-criteria: 5 properties, 0 failed"));
    let out = stdout(&["check", "--germ", "braid:3", "--suite", "all", "--max-len", "3"]);
    assert_eq!(out.matches("0 failed").count(), 3);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["nf", "--germ", "wreath", "zz"]).status.code(), Some(1));
    assert_eq!(run(&["decompose", "--germ", "braid:3", "--left", "s1"]).status.code(), Some(1));
    assert_eq!(run(&["decompose", "--germ", "wreath"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["nf", "--germ", "nonsense:3", "a"]).status.code(), Some(2));
    assert_eq!(run(&["pure", "--germ", "braid:9"]).status.code(), Some(1));
    assert_eq!(run(&["check", "--germ", "wreath", "--suite", "bogus"]).status.code(), Some(2));
}

#[test]
fn validate_reports_file_germs() {
    let dir = std::env::temp_dir().join(format!("garside-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.germ");
    std::fs::write(&good, "germ v1\nsimples: 1 a b ab\ndelta: ab\nprod a b ab\nprod b a ab\n").unwrap();
    let out = stdout(&["validate", "--germ", &format!("file:{}", good.display())]);
    assert!(out.ends_with("valid: true\n"));
    // a·a is missing, so a has no complement and Δ is not balanced
    let bad = dir.join("bad.germ");
    std::fs::write(&bad, "germ v1\nsimples: 1 a b ab\ndelta: ab\nprod a b ab\n").unwrap();
    let out = run(&["validate", "--germ", &format!("file:{}", bad.display())]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("FAIL"));
}

#[test]
fn output_is_deterministic() {
    let args = ["automaton", "--germ", "prod:braid:3,abelian:1", "--variant", "full"];
    assert_eq!(stdout(&args), stdout(&args));
}
