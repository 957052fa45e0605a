//! Behavioral tests for the command-line surface, driving the built binary.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rbonacci"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

#[test]
fn fib_text_matches_cubic_expansion() {
    let out = run(&["fib", "--r", "3", "--n", "5", "--format", "text"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "x1^3 + 2*x1*x2 + x3\n");
}

#[test]
fn fib_json_uses_polynomial_schema() {
    let out = run(&["fib", "--r", "2", "--n", "3", "--format", "json"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).trim(),
        r#"{"arity":2,"terms":[{"exp":[2,0],"coeff":"1"},{"exp":[0,1],"coeff":"1"}]}"#
    );
}

#[test]
fn fib_eval_accepts_rational_points() {
    let out = run(&["fib-eval", "--r", "2", "--n", "4", "--at", "1,1/2"]);
    assert!(out.status.success());
    // F_4 = x1^3 + 2 x1 x2 at (1, 1/2) = 2.
    assert_eq!(stdout(&out), "2\n");
}

#[test]
fn table_lists_values_at_point() {
    let out = run(&["table", "--r", "2", "--n-max", "8", "--at", "1,1", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,value"));
    let values: Vec<&str> = lines.map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(values, ["0", "1", "1", "2", "3", "5", "8", "13", "21"]);
}

#[test]
fn series_streams_genfun_coefficients() {
    let out = run(&["series", "--r", "3", "--order", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("0\t1"));
    assert!(text.contains("3\tx1^3 + 2*x1*x2 + x3"));
}

#[test]
fn series_infinite_variate_needs_exactly_one_mode() {
    let out = run(&["series", "--order", "4", "--at", "1,1,2,3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    // Fibonacci inputs give Pell numbers 0, 1, 2, 5, 12.
    assert_eq!(text, "0\t0\n1\t1\n2\t2\n3\t5\n4\t12\n");
    let bad = run(&["series", "--order", "4"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn bell_commands() {
    let partial = run(&["bell", "--n", "4", "--k", "2"]);
    assert_eq!(stdout(&partial), "2*x1*x3 + x2^2\n");
    let exponential = run(&["bell", "--n", "4", "--k", "2", "--exponential"]);
    assert_eq!(stdout(&exponential), "4*x1*x3 + 3*x2^2\n");
    let complete = run(&["bell", "--n", "3"]);
    assert_eq!(stdout(&complete), "x1^3 + 2*x1*x2 + x3\n");
}

#[test]
fn fubini_and_stirling_values() {
    assert_eq!(stdout(&run(&["fubini", "--n", "3", "--max-block", "2"])), "12\n");
    assert_eq!(stdout(&run(&["fubini", "--n", "8"])), "545835\n");
    assert_eq!(stdout(&run(&["stirling", "--n", "4", "--k", "2"])), "7\n");
}

#[test]
fn binet_csv_report() {
    let out = run(&["binet", "--r", "2", "--n", "5", "--at", "1,1", "--initials", "0,1", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,n,point,method,value,reference,relative_error"));
    // The point field is quoted because it carries commas.
    let methods: Vec<&str> = lines
        .map(|l| l.split("\",").nth(1).unwrap().split(',').next().unwrap())
        .collect();
    assert_eq!(methods, ["binet", "homogeneous", "generic"]);
    for line in text.lines().skip(1) {
        assert!(line.starts_with("2,5,\"1,1\","), "row shape: {line}");
        let rel: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(rel < 1e-8, "relative error {rel} in {line}");
    }
}

#[test]
fn cassini_reports_and_exit_codes() {
    let ok = run(&["cassini", "--r", "3", "--n", "6", "--format", "json"]);
    assert!(ok.status.success());
    let report: serde_json::Value = serde_json::from_str(stdout(&ok).trim()).unwrap();
    assert_eq!(report["identity"], "cassini");
    assert_eq!(report["holds"], true);
    assert_eq!(report["residual"]["terms"].as_array().unwrap().len(), 0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["fib", "--r", "0", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["fib", "--r", "9", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["fib", "--r", "2", "--n", "501"]).status.code(), Some(2));
    assert_eq!(run(&["fib-eval", "--r", "3", "--n", "4", "--at", "1,2"]).status.code(), Some(2));
    assert_eq!(run(&["fib-eval", "--r", "2", "--n", "4", "--at", "1,1/0"]).status.code(), Some(2));
    assert_eq!(run(&["cassini", "--r", "3", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn verify_single_suite_runs() {
    let out = run(&["verify", "bell", "--max-r", "3", "--max-n", "8"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("PASS bell_complete_equals_fib"));
    assert!(text.contains("all 4 identities hold"));
}
