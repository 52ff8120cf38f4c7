//! End-to-end runs of the `corners` binary.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_corners"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn is_pq(s: &str) -> bool {
    let s = s.strip_prefix('-').unwrap_or(s);
    match s.split_once('/') {
        Some((p, q)) => {
            !p.is_empty() && !q.is_empty() && p.bytes().all(|b| b.is_ascii_digit()) && q.bytes().all(|b| b.is_ascii_digit())
        }
        None => false,
    }
}

/// Every string leaf that looks numeric must be a `p/q` rational.
fn check_rationals(v: &Value, key: &str) {
    match v {
        Value::String(s) if matches!(key, "value" | "eps" | "expected" | "got") => {
            assert!(is_pq(s), "{key}: {s:?} is not p/q")
        }
        Value::Array(a) => a.iter().for_each(|x| check_rationals(x, key)),
        Value::Object(o) => o.iter().for_each(|(k, x)| check_rationals(x, k)),
        _ => {}
    }
}

#[test]
fn enumerate_lists_compositions() {
    let v = json(&["enumerate", "--cells", "3"]);
    let words: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["word"].as_str().unwrap()).collect();
    assert_eq!(words, ["111", "12", "21", "3"]);
    let v = json(&["enumerate", "--cells", "3", "--columns", "2"]);
    assert_eq!(v.as_array().unwrap().len(), 2);
    let v = json(&["enumerate", "--cells", "3", "--setpart"]);
    assert_eq!(v.as_array().unwrap().len(), 5);
    let v = json(&["enumerate", "--cells", "4", "--setpart", "--blocks", "2"]);
    assert_eq!(v.as_array().unwrap().len(), 7);
}

#[test]
fn enumerate_reports_corners() {
    let v = json(&["enumerate", "--cells", "3"]);
    let row = v.as_array().unwrap().iter().find(|r| r["word"] == "21").unwrap();
    let corners: Vec<&str> = row["corners"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(corners, ["B(1,1)@1", "A(1,1)@2", "B(1,1)@2"]);
    let out = run(&["enumerate", "--cells", "3", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("word,cells,columns,corners"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn census_totals() {
    let v = json(&["census", "--cells-max", "4"]);
    let rows = v.as_array().unwrap();
    let sum = |n: u64, key: &str| -> u64 {
        rows.iter().filter(|r| r["n"] == n).map(|r| r[key].as_u64().unwrap()).sum()
    };
    assert_eq!(sum(4, "count"), 8);
    assert_eq!(sum(4, "total_A"), 3);
    assert_eq!(sum(4, "total_B"), 11);
    assert_eq!(sum(3, "total_A"), 1);
    let v = json(&["census", "--cells-max", "3", "--setpart"]);
    let b: u64 = v.as_array().unwrap().iter().filter(|r| r["n"] == 3).map(|r| r["total_B"].as_u64().unwrap()).sum();
    assert_eq!(b, 6);
}

#[test]
fn series_coefficients() {
    let v = json(&["series", "--gf", "G", "--xcap", "4", "--ycap", "4"]);
    let at = |v: &Value, i: u64, j: u64| {
        v.as_array().unwrap().iter().find(|r| r["i"] == i && r["j"] == j).map(|r| r["value"].as_str().unwrap().to_string())
    };
    assert_eq!(at(&v, 3, 2).as_deref(), Some("1/1"));
    let v = json(&["series", "--gf", "J", "--mark", "all", "--xcap", "4", "--ycap", "4"]);
    let eps4: i64 = v
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["i"] == 4)
        .map(|r| r["eps"].as_str().unwrap().trim_end_matches("/1").parse::<i64>().unwrap())
        .sum();
    assert_eq!(eps4, 11);
    let v = json(&["series", "--gf", "Qk_A", "--k", "2", "--xcap", "6"]);
    assert_eq!(at(&v, 3, 0).as_deref(), Some("1/1"));
    check_rationals(&v, "");
    let v = json(&["series", "--gf", "T_A", "--v", "1", "--w", "1", "--xcap", "5", "--ycap", "5"]);
    check_rationals(&v, "");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["enumerate", "--blocks", "2"][..],
        &["series", "--gf", "T_A"],
        &["series", "--gf", "Pk_B", "--k", "2", "--mark", "vw", "--v", "1", "--w", "1"],
        &["series", "--gf", "nope"],
        &["verify", "--xcap", "30"],
        &["enumerate", "--cells", "40"],
        &["frobnicate"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn thread_variable_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_corners"))
        .args(["enumerate", "--cells", "2"])
        .env("CORNERS_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

const SMALL: [&str; 9] = ["verify", "--xcap", "10", "--ycap", "10", "--setpart-max", "6", "--vw-max", "2"];

#[test]
fn verify_small_config() {
    let v = json(&SMALL);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() >= 12);
    let status = |id: &str| checks.iter().find(|c| c["formula_id"] == id).unwrap()["status"].as_str().unwrap().to_string();
    assert_eq!(status("A/H-closed-form"), "MATCH");
    assert_eq!(status("B/H(x,y)"), "MISMATCH");
    for c in checks {
        let s = c["status"].as_str().unwrap();
        assert!(["MATCH", "MISMATCH", "ASYMPTOTIC-ONLY"].contains(&s));
    }
    check_rationals(&v, "");
}

#[test]
fn verify_is_deterministic() {
    let a = run(&SMALL);
    let b = Command::new(env!("CARGO_BIN_EXE_corners"))
        .args(SMALL)
        .env("CORNERS_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let mut plain = SMALL.to_vec();
    plain.extend(["--format", "plain"]);
    let text = String::from_utf8(run(&plain).stdout).unwrap();
    assert!(text.contains("B/H(x,1)"));
}
