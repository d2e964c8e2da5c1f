use std::io::Write;
use std::process::{Command, Output};

fn setfix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_setfix"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scenario_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

const HALVING: &str = "\
name halving
space interval [0, 1]
branch [0, 1] -> set {x/2}
alpha constant 1
zeta 5/6 * s - t
start x0=1
";

#[test]
fn paper_example_one_solve() {
    let out = setfix(&["paper-example", "1", "solve"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("orbit: CONVERGED-TO 0\n"));
}

#[test]
fn paper_example_one_certify_generalized() {
    let out = setfix(&["paper-example", "1", "certify", "--mode", "generalized"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("CERTIFIED-ON-PAIRS"));
}

#[test]
fn paper_example_two_plain_is_violated() {
    let out = setfix(&[
        "--format",
        "records",
        "paper-example",
        "2",
        "certify",
        "--mode",
        "plain",
        "--grid-step",
        "1/100",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("verdict=VIOLATED"));
}

#[test]
fn paper_example_two_enumerate() {
    let out = setfix(&["paper-example", "2", "enumerate", "--analytic"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "fixed points: {1/10} ∪ {3/5} ∪ {3/4} ∪ {4/5}\n"
    );
}

#[test]
fn scenario_file_commands() {
    let f = scenario_file(HALVING);
    let path = f.path().to_str().unwrap();
    let out = setfix(&["certify", path, "--grid-step", "1/16"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = setfix(&["--format", "records", "solve", path]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("orbit status=CONVERGED-TO"));
    assert!(stdout(&out).contains("u=0/1 residual=0/1"));
    let out = setfix(&["enumerate", path]);
    assert_eq!(stdout(&out), "fixed points: {0}\n");
    let out = setfix(&["enumerate", path, "--grid", "1/4"]);
    assert_eq!(out.status.code(), Some(0));
    let out = setfix(&["check-classes", path]);
    assert!(matches!(out.status.code(), Some(0 | 1)));
    assert!(stdout(&out).contains("C-class: PASS"));
}

#[test]
fn not_found_exits_one() {
    let f = scenario_file(
        "space interval [0, 1]\nbranch [0, 1/2) -> set {1}\nbranch [1/2, 1] -> set {0}\nalpha constant 1\nzeta s - t\nstart x0=0\nmax-iter 10\n",
    );
    let path = f.path().to_str().unwrap();
    assert_eq!(setfix(&["enumerate", path]).status.code(), Some(1));
    assert_eq!(setfix(&["solve", path]).status.code(), Some(1));
}

#[test]
fn input_errors_exit_two() {
    let f = scenario_file("space interval [0, 5]\nbranch [0, 2] -> set {1}\nbranch [2, 5] -> set {1}\nalpha constant 1\nzeta s - t\n");
    let out = setfix(&["certify", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.contains("line 2, column 1: branches overlap at 2"),
        "{err}"
    );
    assert_eq!(
        setfix(&["certify", "/nonexistent/file"]).status.code(),
        Some(2)
    );
    assert_eq!(
        setfix(&["paper-example", "3", "solve"]).status.code(),
        Some(2)
    );
    assert_eq!(
        setfix(&["paper-example", "2", "solve", "--x1", "4/5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(setfix(&["certify"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = setfix(&[
        "--seed",
        "5",
        "--format",
        "records",
        "paper-example",
        "1",
        "check-classes",
    ]);
    let b = setfix(&[
        "--seed",
        "5",
        "--format",
        "records",
        "paper-example",
        "1",
        "check-classes",
    ]);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}
