use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const EXAMPLE: [&str; 4] = ["--poly", "3x^2-2x+5", "--digits", "0,1,2,3,4"];

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_digitsys"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let v = serde_json::from_str(&stdout(&out)).expect("valid json");
    (v, out.status.code().unwrap())
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).expect("golden file")
}

fn with_example<'a>(cmd: &'a str, rest: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec![cmd];
    v.extend_from_slice(&EXAMPLE);
    v.extend_from_slice(rest);
    v
}

#[test]
fn expand_minus_one() {
    let out = run(&with_example("expand", &["--element", "-1"]));
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("4, 3, 1, 3"), "{text}");
    assert!(text.contains("finite"), "{text}");
}

#[test]
fn expand_json_matches_golden() {
    let out = run(&["--json", "expand", "--poly", "3x^2-2x+5", "--digits", "0,1,2,3,4", "--element", "-1"]);
    assert_eq!(stdout(&out), golden("expand_example1.json"));
}

#[test]
fn json_top_level_key_order() {
    let out = run(&["--json", "expand", "--poly", "3x^2-2x+5", "--digits", "0,1,2,3,4", "--element", "5"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["command", "system", "result", "steps_used", "cap_hit"]);
    let sys: Vec<&str> = v["system"].as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(sys, ["ring", "poly", "digits"]);
}

#[test]
fn srs_epsilon_half_matches_golden() {
    let out = run(&["--json", "srs", "--r", "3/5,-2/5", "--eps", "1/2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), golden("srs_eps_half.json"));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["in_d0"], "no");
    assert_eq!(v["result"]["in_d"], "yes");
}

#[test]
fn decide_shifted_digits_matches_golden() {
    let out = run(&["--json", "decide", "--poly", "3x^2-2x+5", "--digits", "-2,-1,0,1,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), golden("decide_example1_shifted.json"));
}

#[test]
fn witness_dot_matches_golden() {
    let dir = std::env::temp_dir().join(format!("digitsys-dot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g.dot");
    let out = run(&[
        "witness",
        "--ring",
        "Zi",
        "--poly",
        "(1+i)x+(1+2i)",
        "--digits",
        "0,1,2,3,4",
        "--dot",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let dot = std::fs::read_to_string(&path).unwrap();
    assert_eq!(dot, golden("witness_gaussian.dot"));
    for edge in ["\"-1+i\" -> \"1-i\"", "\"1-i\" -> \"2\"", "\"2\" -> \"0\"", "\"0\" -> \"0\""] {
        assert!(dot.contains(edge), "missing {edge}");
    }
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn ff_proof_matches_golden() {
    let out = run(&[
        "ff",
        "--p",
        "2",
        "--poly",
        "(y+1)x^2+y*x+(y^2+1)",
        "--digits",
        "1,y,y+1,y^3+y",
        "--prove-fep",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), golden("ff_example2.txt"));
}

#[test]
fn unknown_verdict_exits_two() {
    let (v, code) = json(&["decide", "--ring", "Fp:2", "--poly", "y^2*x+y", "--digits", "0,1"]);
    assert_eq!(code, 2);
    assert_eq!(v["result"]["fep"]["answer"], "no");
    assert_eq!(v["result"]["pep"]["answer"], "unknown");
}

#[test]
fn step_cap_hit_exits_two() {
    let (v, code) = json(&with_example("expand", &["--element", "7x+11", "--cap", "2"]));
    assert_eq!(code, 2);
    assert_eq!(v["cap_hit"], true);
    assert_eq!(v["result"]["class"], "unknown");
}

#[test]
fn parse_error_reports_position() {
    let out = run(&with_example("expand", &["--element", "3x+*2"]));
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("position 3"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn invalid_digit_set_exits_one() {
    let out = run(&["expand", "--poly", "3x^2-2x+5", "--digits", "0,1,2", "--element", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bad_arguments_exit_one() {
    assert_eq!(run(&["expand"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn printed_elements_reparse() {
    let (v, _) = json(&with_example("expand", &["--element", "7x+11"]));
    let printed = v["result"]["element"].as_str().unwrap().to_string();
    let (again, code) = json(&with_example("expand", &["--element", &printed]));
    assert_eq!(code, 0);
    assert_eq!(again["result"], v["result"]);

    let (d, _) = json(&["decide", "--poly", "3x^2-2x+5", "--digits", "-2,-1,0,1,2"]);
    for e in d["result"]["fep"]["certificate"]["elements"].as_array().unwrap() {
        let e = e.as_str().unwrap();
        let (x, code) = json(&["expand", "--poly", "3x^2-2x+5", "--digits", "-2,-1,0,1,2", "--element", e]);
        assert_eq!(code, 0, "{e}");
        assert_eq!(x["result"]["element"], e);
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let cases: [&[&str]; 3] = [
        &["--json", "decide", "--poly", "3x^2-2x+5", "--digits", "0,1,2,3,4"],
        &["--json", "witness", "--ring", "Zi", "--poly", "(1+i)x+(1+2i)", "--digits", "0,1,2,3,4"],
        &["--json", "srs", "--r", "1/2,1/3"],
    ];
    for args in cases {
        let first = run(args).stdout;
        for _ in 0..3 {
            assert_eq!(run(args).stdout, first, "{args:?}");
        }
    }
}

#[test]
fn zero_cycle_and_product_run() {
    let (z, code) = json(&with_example("zero-cycle", &[]));
    assert_eq!(code, 0);
    assert!(!z["result"].is_null());

    let (p, code) = json(&["product", "--factors", "x+2:0,1;x+3:0,1,2", "--element", "x^2+1"]);
    assert_eq!(code, 0, "{p}");
    assert!(!p["result"].is_null());
}
