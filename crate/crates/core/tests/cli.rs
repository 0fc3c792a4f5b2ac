use std::process::Command;

use rittforge::cli::run;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("rittforge").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned())
}

fn json(args: &[&str]) -> Value {
    let (code, out) = call(args);
    assert_eq!(code, 0, "{args:?}: {out}");
    serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}: {out}"))
}

const Z6_PLUS_1: &str = r#"{"coeffs":["1/1","0/1","0/1","0/1","0/1","0/1","1/1"]}"#;

#[test]
fn decompose() {
    let v = json(&["decompose", Z6_PLUS_1]);
    assert_eq!(v["degree_multiset"], serde_json::json!([2, 3]));
    assert_eq!(v["length"], 2);
}

#[test]
fn ritt_apply() {
    let d = r#"{"factors":[{"coeffs":["0","0","1"]},{"coeffs":["0","1","0","1"]}]}"#;
    let m = r#"{"kind":"monomial_swap","position":1,"k":2,"r":1}"#;
    let v = json(&["ritt", "apply", d, m]);
    assert_eq!(v["factors"][0]["coeffs"], serde_json::json!(["0/1", "1/1", "2/1", "1/1"]));
    assert_eq!(v["factors"][1]["coeffs"], serde_json::json!(["0/1", "0/1", "1/1"]));
    let (code, out) = call(&["ritt", "apply", d, r#"{"kind":"chebyshev_swap","position":1}"#]);
    assert_eq!(code, 1);
    assert!(out.contains("\"error\""));
}

#[test]
fn char_eval() {
    assert_eq!(json(&["char", "eval", "--kind", "degree", Z6_PLUS_1])["value"], "6/1");
    let v = json(&["char", "eval", "--kind", "length", "--base", "t", Z6_PLUS_1]);
    assert_eq!(v["value"], serde_json::json!({"base": "t", "exp": 2}));
    let prime = r#"{"coeffs":["-2","0","1"]}"#;
    let v = json(&["char", "eval", "--kind", "orbit", "--base", "5", "--prime", prime, Z6_PLUS_1]);
    assert_eq!(v["value"], "0");
    assert_eq!(json(&["char", "eval", "--kind", "length", r#"{"coeffs":["7"]}"#])["value"], "0");
    assert_eq!(call(&["char", "eval", "--kind", "orbit", Z6_PLUS_1]).0, 1);
}

#[test]
fn equivalences() {
    let v = json(&["equiv", "biorbit", r#"{"coeffs":["0","0","1"]}"#, r#"{"coeffs":["1","2","1"]}"#]);
    assert_eq!(v["B"], serde_json::json!({"a": "1/1", "b": "1/1"}));
    let v = json(&["equiv", "biorbit", r#"{"coeffs":["0","1","0","0","1"]}"#, r#"{"coeffs":["0","0","0","0","1"]}"#]);
    assert_eq!(v, serde_json::json!({"result": "none"}));
    let v = json(&["equiv", "conj", r#"{"coeffs":["0","0","1"]}"#, r#"{"coeffs":["2","4","1"]}"#]);
    assert_eq!(v["A"], serde_json::json!({"a": "1/1", "b": "-2/1"}));
    let v = json(&["equiv", "symmetries", r#"{"coeffs":["0","0","0","1"]}"#]);
    assert_eq!(v["one_parameter_family"], true);
}

#[test]
fn sandwich() {
    let v = json(&["sandwich", "compose", r#"{"coeffs":["0","0","1"]}"#, r#"{"coeffs":["1","1"]}"#, r#"{"coeffs":["0","2"]}"#]);
    assert_eq!(v["coeffs"], serde_json::json!(["1/1", "0/1", "4/1"]));
}

#[test]
fn corr_verify() {
    let v = json(&["corr", "verify", "--n", "2", "--suite", "aut"]);
    assert_eq!(v, serde_json::json!({"all_inner": true, "automorphisms": 2, "expected": 2, "pass": true}));
    let (code, out) = call(&["corr", "verify", "--n", "9", "--suite", "blocks"]);
    assert_eq!(code, 1);
    assert!(out.contains("budget"));
    assert_eq!(call(&["corr", "verify", "--n", "2", "--suite", "nope"]).0, 2);
}

#[test]
fn hcorr() {
    let square = r#"{"coeffs_in_W":[{"coeffs":["0","0","-1"]},"1"]}"#;
    let shift = r#"{"coeffs_in_W":[{"coeffs":["-1","-1"]},"1"]}"#;
    let v = json(&["hcorr", "compose", square, shift]);
    assert_eq!(v["coeffs_in_W"][0]["num"]["coeffs"], serde_json::json!(["-1/1", "0/1", "-1/1"]));
    let root = r#"{"coeffs_in_W":[{"coeffs":["0","-1"]},"0","1"]}"#;
    let v = json(&["hcorr", "compose", root, square, "--squarefree"]);
    assert_eq!(v["coeffs_in_W"].as_array().unwrap().len(), 2);
    let v = json(&["hcorr", "fiber", root, "--at", "4,0"]);
    assert_eq!(v["fiber"], serde_json::json!([[-2.0, 0.0], [2.0, 0.0]]));
    let pole = r#"{"coeffs_in_W":[{"num":{"coeffs":["1"]},"den":{"coeffs":["0","1"]}},"1"]}"#;
    assert_eq!(call(&["hcorr", "fiber", pole, "--at", "0,0"]).0, 1);
}

#[test]
fn julia() {
    assert_eq!(json(&["julia", "orbit", "--map", "z^2-1", "--at", "0,0"]), serde_json::json!({"kind": "finite_exact", "preperiod": 0, "period": 2}));
    let v = json(&["julia", "orbit", "--map", "z^2", "--at", "0.5,0", "--float"]);
    assert_eq!(v["kind"], "attracted_numeric");

    let dir = std::env::temp_dir().join(format!("rittforge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (pgm, csv) = (dir.join("g.pgm"), dir.join("g.csv"));
    let v = json(&["julia", "render", "--map", "z^2", "--res", "32", "--out", pgm.to_str().unwrap(), "--csv", csv.to_str().unwrap()]);
    let counts = &v["counts"];
    let total: u64 = ["FINITE", "UNDECIDED", "ATTRACTED", "ESCAPE"].iter().map(|k| counts[k].as_u64().unwrap()).sum();
    assert_eq!(total, 32 * 32);
    let bytes = std::fs::read(&pgm).unwrap();
    assert!(bytes.starts_with(b"P5\n32 32\n255\n"));
    assert!(bytes[13..].iter().all(|b| [0, 85, 170, 255].contains(b)));
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 32 * 32 + 1);

    let (code, out) = call(&["julia", "render", "--map", "z^2", "--res", "8"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("P5\n8 8\n255\n"));
    assert_eq!(call(&["julia", "render", "--map", "z^^2"]).0, 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn suite_subset() {
    let (code, out) = call(&["suite", "--check", "2", "--check", "8"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.starts_with("[PASS]")).count(), 2);
    let v = json(&["--json", "suite", "--check", "4", "--seed", "7"]);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["pass"], true);
    let (code, _) = call(&["suite", "--check", "99"]);
    assert_eq!(code, 1);
}

#[test]
fn files_are_accepted() {
    let path = std::env::temp_dir().join(format!("rittforge-poly-{}.json", std::process::id()));
    std::fs::write(&path, Z6_PLUS_1).unwrap();
    assert_eq!(json(&["decompose", path.to_str().unwrap()])["length"], 2);
    std::fs::remove_file(&path).unwrap();
    let (code, out) = call(&["decompose", "/nonexistent/poly.json"]);
    assert_eq!(code, 1);
    assert!(out.contains("io error"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_rittforge");
    let out = Command::new(bin).args(["decompose", Z6_PLUS_1]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["length"], 2);
    assert_eq!(Command::new(bin).arg("--no-such-flag").output().unwrap().status.code(), Some(2));
    let out = Command::new(bin).args(["decompose", r#"{"coeffs":["1","1"]}"#]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["error"].is_string());
}

/// Everything printed parses back to the same value.
#[test]
fn json_round_trips() {
    use rittforge::decompose::Decomposition;
    use rittforge::hcorr::HolCorr;
    let (_, out) = call(&["decompose", Z6_PLUS_1]);
    let d: Decomposition = serde_json::from_str(&out).unwrap();
    assert_eq!(serde_json::to_value(&d).unwrap(), serde_json::from_str::<Value>(&out).unwrap());
    let (_, out) = call(&["hcorr", "compose", r#"{"coeffs_in_W":[{"coeffs":["0","0","-1"]},"1"]}"#, r#"{"coeffs_in_W":[{"num":{"coeffs":["1"]},"den":{"coeffs":["1","1"]}},"1"]}"#]);
    let k: HolCorr = serde_json::from_str(&out).unwrap();
    assert_eq!(serde_json::to_value(&k).unwrap(), serde_json::from_str::<Value>(&out).unwrap());
}
