use std::collections::BTreeSet;
use std::io::Write as _;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const G4: &str = include_str!("../../core/data/g4.arr");
const G8: &str = include_str!("../../core/data/g8.arr");
const DIHEDRAL: &str = include_str!("../../core/data/dihedral.arr");

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hyparr"))
        .args(["--threads", "1"])
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn numbers_in_text(s: &str) -> BTreeSet<String> {
    s.split(|c: char| !c.is_ascii_digit()).filter(|t| !t.is_empty()).map(str::to_string).collect()
}

fn numbers_in_json(v: &Value, out: &mut BTreeSet<String>) {
    match v {
        Value::Number(n) => {
            out.insert(n.to_string());
        }
        Value::String(s) => out.extend(numbers_in_text(s)),
        Value::Array(a) => a.iter().for_each(|x| numbers_in_json(x, out)),
        Value::Object(m) => m.values().for_each(|x| numbers_in_json(x, out)),
        _ => {}
    }
}

fn numbers_in_json_set(v: &Value) -> BTreeSet<String> {
    let mut s = BTreeSet::new();
    numbers_in_json(v, &mut s);
    s
}

#[test]
fn text_numbers_appear_in_json() {
    for input in [G4, G8, DIHEDRAL] {
        let text = stdout(&run(&["analyze", "--all", "--basis"], input));
        let json: Value =
            serde_json::from_str(&stdout(&run(&["analyze", "--all", "--basis", "--json"], input))).unwrap();
        let mut in_json = numbers_in_json_set(&json);
        // Exponents of t in the expanded polynomial are positions in the coefficient list.
        in_json.extend((0..=4).map(|k| k.to_string()));
        let missing: Vec<_> = numbers_in_text(&text).difference(&in_json).cloned().collect();
        assert!(missing.is_empty(), "text-only numbers {missing:?} in\n{text}");
    }
}

#[test]
fn golden_text_reports() {
    for (input, golden) in [(G4, include_str!("golden/g4.txt")), (DIHEDRAL, include_str!("golden/dihedral.txt"))] {
        let out = run(&["analyze", "--all", "--basis"], input);
        assert!(out.status.success());
        assert_eq!(stdout(&out), golden);
    }
}

#[test]
fn output_is_deterministic() {
    let a = stdout(&run(&["analyze", "--all", "--json"], G8));
    let b = stdout(&run(&["analyze", "--all", "--json"], G8));
    assert_eq!(a, b);
}

#[test]
fn shipped_files_round_trip() {
    for input in [G4, G8, DIHEDRAL] {
        let once = hyparr::emit_arrangement(&hyparr::parse_arrangement(input).unwrap().arrangement);
        let twice = hyparr::emit_arrangement(&hyparr::parse_arrangement(&once).unwrap().arrangement);
        assert_eq!(once, twice);
    }
    let g8 = stdout(&run(&["gen", "g8"], ""));
    assert_eq!(g8, hyparr::emit_arrangement(&hyparr::parse_arrangement(G8).unwrap().arrangement));
}

#[test]
fn gen_examples() {
    let count = |args: &[&str]| stdout(&run(args, "")).lines().filter(|l| l.starts_with("h ")).count();
    assert_eq!(count(&["gen", "wreath", "--g", "A1", "--order", "2", "--n", "2"]), 4);
    assert_eq!(count(&["gen", "wreath", "--g", "A2", "--order", "3", "--n", "2"]), 10);
    assert_eq!(count(&["gen", "cyclic", "--ell", "2"]), 1);
    assert_eq!(count(&["gen", "cyclic", "--ell", "4"]), 6);
    assert_eq!(count(&["gen", "dihedral"]), 4);
    assert_eq!(count(&["gen", "coxeter", "--weyl", "S4"]), 6);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str], input: &str| run(args, input).status.code().unwrap();
    assert_eq!(code(&["analyze"], "dim 2\nh 1 x\n"), 1);
    assert_eq!(code(&["analyze"], ""), 1);
    assert_eq!(code(&["analyze", "--e-count"], "dim 2\nweyl S3\nh 1 0\n"), 2);
    assert_eq!(code(&["analyze", "--free", "--budget", "1", "--strict"], G8), 3);
    assert_eq!(code(&["analyze", "--free", "--budget", "1"], G8), 0);
    assert_eq!(code(&["gen", "wreath", "--g", "A2", "--order", "4", "--n", "2"], ""), 64);
    assert_eq!(code(&["gen", "nope"], ""), 64);
    assert_eq!(code(&["analyze", "/definitely/missing.arr"], ""), 66);
    assert_eq!(code(&["audit-table"], ""), 0);
    assert_eq!(code(&["--help"], ""), 0);
}

#[test]
fn duplicate_warning_goes_to_stderr() {
    let out = run(&["analyze"], "dim 2\nh 2 0\nh 1 0\n");
    assert!(out.status.success());
    assert!(String::from_utf8(out.stderr.clone()).unwrap().contains("duplicate"));
    assert!(stdout(&out).contains("hyperplanes: 1"));
}

#[test]
fn audit_table_flags_known_rows() {
    let text = stdout(&run(&["audit-table"], ""));
    let g9 = text.lines().find(|l| l.starts_with("G9 ")).unwrap();
    assert!(g9.contains("e-count=FAIL"));
    let g6 = text.lines().find(|l| l.starts_with("G6 ")).unwrap();
    assert!(!g6.contains("FAIL"));
    assert!(text.contains("e-count: 144/12 = 12, printed 12"));
    assert!(text.contains("e-count: 24/6 = 4, printed 4"));
}
