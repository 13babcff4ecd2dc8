use proptest::prelude::*;
use serde_json::Value;
use sumsynth::{format_canonical, parse_poly};
use sumsynth_cli::{run_cli, CliOutput};

fn run(args: &[&str]) -> CliOutput {
    run_cli(std::iter::once("sumsynth").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let v = serde_json::from_str(out.stdout.trim()).expect("stdout is one JSON record");
    (out.code, v)
}

fn keys(v: &Value) -> Vec<&str> {
    let mut k: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    k.sort_unstable();
    k
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["synth", "n^3 - n"]).code, 0);
    assert_eq!(run(&["synth-fact", "n*n!"]).code, 0);
    assert_eq!(run(&["synth-fact", "n!", "--deg-x", "3", "--deg-y", "2"]).code, 1);
    assert_eq!(run(&["member", "n+1"]).code, 1);
    assert_eq!(run(&["member", "1/2*n^2"]).code, 1);
    assert_eq!(run(&["verify", "n", "n"]).code, 1);
    assert_eq!(run(&["verify", "n^3", "1/4*n^4 + 1/2*n^3 + 1/4*n^2"]).code, 0);
    assert_eq!(run(&["synth", "n/2"]).code, 2);
    assert_eq!(run(&["synth", "n!"]).code, 2);
    assert_eq!(run(&["faulhaber", "0"]).code, 2);
    assert_eq!(run(&["bogus"]).code, 2);
    assert_eq!(run(&[]).code, 2);
}

#[test]
fn negative_leading_expression_is_not_a_flag() {
    let out = run(&["synth", "-n"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout.trim(), "-1/2*n^2 - 1/2*n");
}

#[test]
fn parse_errors_report_position() {
    let out = run(&["synth", "n + * 2"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.is_empty());
    assert!(out.stderr.contains("position 4"), "{}", out.stderr);
}

#[test]
fn json_field_sets() {
    let (code, v) = json(&["synth", "n^2"]);
    assert_eq!(code, 0);
    assert_eq!(keys(&v), ["command", "input", "result", "status", "verified_upto"]);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["result"], "1/3*n^3 + 1/2*n^2 + 1/6*n");

    let (code, v) = json(&["synth-fact", "n!", "--deg-x", "3", "--deg-y", "2"]);
    assert_eq!(code, 1);
    assert_eq!(keys(&v), ["bounds", "command", "input", "result", "status"]);
    assert_eq!(v["status"], "no-solution");
    assert_eq!(v["bounds"]["deg_x"], 3);
    let cert = &v["result"]["certificate"];
    assert_eq!(cert["rhs"], "1");
    assert_eq!(cert["unknowns"].as_array().unwrap().len(), 12);

    let (_, v) = json(&["member", "n+1"]);
    assert_eq!(v["status"], "not-member");

    let (_, v) = json(&["verify", "n", "n"]);
    assert_eq!(v["input"]["f"], "n");
    assert_eq!(v["result"]["n"], 2);

    let (code, v) = json(&["synth", "n^"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "error");
}

#[test]
fn weighted_forms() {
    let out = run(&["weighted", "n", "--weights", "periodic:-1,1"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "r=1: -1/2*n - 1/2\nr=2: 1/2*n\n");

    // Constant weight: a single form.
    let out = run(&["weighted", "n", "--weights", "const:2"]);
    assert_eq!(out.stdout.trim(), "n^2 + n");

    let out = run(&["weighted", "n", "--weights", "periodic:"]);
    assert_eq!(out.code, 2);
}

#[test]
fn binary_matches_library() {
    let args = ["synth-fact", "n^2*n! + n!"];
    let bin = std::process::Command::new(env!("CARGO_BIN_EXE_sumsynth"))
        .args(args)
        .output()
        .unwrap();
    let lib = run(&args);
    assert_eq!(bin.status.code(), Some(lib.code));
    assert_eq!(String::from_utf8(bin.stdout).unwrap(), lib.stdout);
}

fn arb_int_expr() -> impl Strategy<Value = String> {
    proptest::collection::vec(-20i64..=20, 1..=6).prop_map(|c| {
        c.iter()
            .enumerate()
            .map(|(k, a)| format!("({a})*n^{k}"))
            .collect::<Vec<_>>()
            .join(" + ")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn synth_output_reparses_and_is_member(expr in arb_int_expr()) {
        let out = run(&["synth", &expr]);
        prop_assert_eq!(out.code, 0);
        let g = parse_poly(out.stdout.trim()).unwrap();
        prop_assert_eq!(format_canonical(&g), out.stdout.trim());
        prop_assert_eq!(run(&["member", out.stdout.trim()]).code, 0);
        prop_assert_eq!(run(&["verify", &expr, out.stdout.trim()]).code, 0);
    }

    #[test]
    fn garbage_never_panics(s in "[n!0-9+*^()/ a-z-]{0,12}") {
        let out = run(&["synth", &s]);
        prop_assert!(matches!(out.code, 0 | 2));
        prop_assert_eq!(out.code == 2, !out.stderr.is_empty());
    }
}
