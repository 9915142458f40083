use std::collections::BTreeSet;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn harm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_harm")).args(args).env_remove("HARM_CACHE").output().expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn line<'a>(out: &'a str, prefix: &str) -> &'a str {
    out.lines().find_map(|l| l.strip_prefix(prefix)).unwrap_or_else(|| panic!("no `{prefix}` line in\n{out}"))
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn two_sets_for_s2() {
    let o = harm(&["hilbert", "--group", "S2", "--sets", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(line(&stdout(&o), "series: "), "1 + q1 + q2");
}

#[test]
fn cyclic_group_in_one_set() {
    let o = harm(&["hilbert", "--group", "C4", "--sets", "1"]);
    assert_eq!(line(&stdout(&o), "series: "), "1 + t + t^2 + t^3");
}

#[test]
fn json_schema_is_stable() {
    let v = json(&harm(&["hilbert", "--group", "I2(3)", "--sets", "2", "--format", "json"]));
    let keys: BTreeSet<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    for k in ["group", "sets", "policy", "hilbert", "schur", "h"] {
        assert!(keys.contains(k), "missing {k}");
    }
    assert_eq!(v["group"], serde_json::json!({ "m": 3, "p": 3, "n": 2 }));
    assert_eq!(v["sets"], 2);
    assert_eq!(v["policy"], "polarized");
    let total: u64 = v["hilbert"].as_array().unwrap().iter().map(|e| e["dim"].as_u64().unwrap()).sum();
    // 1 + 2h1 + h11 + h2 + h3 at two variables set to 1: 1 + 4 + 4 + 3 + 4,
    // the same as S3, which is isomorphic to I2(3)
    assert_eq!(total, 16);
    for e in v["hilbert"].as_array().unwrap() {
        assert_eq!(e["degree"].as_array().unwrap().len(), 2);
    }
    for e in v["h"].as_array().unwrap().iter().chain(v["schur"].as_array().unwrap()) {
        assert!(e["mu"].is_array() && e["coeff"].is_i64());
    }
}

#[test]
fn universal_h_forms() {
    let s3 = harm(&["universal", "--group", "S3"]);
    assert_eq!(line(&stdout(&s3), "h-form: "), "1 + 2 h[1] + h[2] + h[1,1] + h[3]");
    let c5 = harm(&["universal", "--group", "C5"]);
    assert_eq!(line(&stdout(&c5), "h-form: "), "1 + h[1] + h[2] + h[3] + h[4]");
    let s4 = json(&harm(&["universal", "--group", "S4", "--format", "json"]));
    assert_eq!(s4["h"].as_array().unwrap().len(), 12);
    assert_eq!(s4["certified_against"], 3);
}

#[test]
fn frobenius_rows_for_s3() {
    let o = harm(&["frobenius", "--group", "S3", "--sets", "3"]);
    let out = stdout(&o);
    assert_eq!(line(&out, "  S[2,1]: "), "s[1] + s[2]");
    assert_eq!(line(&out, "  S[1,1,1]: "), "s[1,1] + s[3]");
    assert_eq!(harm(&["frobenius", "--group", "B2", "--sets", "2"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(harm(&["hilbert", "--group", "X9"]).status.code(), Some(2));
    assert_eq!(harm(&["hilbert", "--group", "G(4,3,2)"]).status.code(), Some(2));
    assert_eq!(harm(&["hilbert", "--group", "S3", "--policy", "bogus"]).status.code(), Some(2));
    assert_eq!(harm(&["hilbert", "--group", "G(4,2,2)", "--policy", "polarized"]).status.code(), Some(2));
    assert_eq!(harm(&["closed-form", "--group", "S4"]).status.code(), Some(2));
    assert_eq!(harm(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn resource_cap_exits_with_three_and_names_the_degree() {
    let o = harm(&["hilbert", "--group", "S4", "--sets", "2", "--max-entries", "10"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("multidegree ["));
}

fn records(path: &Path) -> usize {
    std::fs::read_to_string(path).unwrap().lines().count()
}

#[test]
fn warm_cache_gives_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("harm.ndjson");
    let c = cache.to_str().unwrap();
    for (cmd, group, sets) in [("hilbert", "I2(4)", "2"), ("frobenius", "S3", "3")] {
        let args = ["--group", group, "--sets", sets, "--format", "json", "--cache", c];
        let plain = harm(&[&[cmd], &args[..6]].concat());
        let cold = harm(&[&[cmd], &args[..]].concat());
        let n = records(&cache);
        let warm = harm(&[&[cmd], &args[..]].concat());
        assert_eq!(records(&cache), n, "{cmd}: a warm run appends nothing");
        assert_eq!(cold.stdout, warm.stdout);
        assert_eq!(plain.stdout, warm.stdout);
    }
    // Frobenius records also serve plain Hilbert requests
    let n = records(&cache);
    let o = harm(&["hilbert", "--group", "S3", "--sets", "3", "--cache", c]);
    assert!(o.status.success());
    assert_eq!(records(&cache), n);
}

#[test]
fn cache_path_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("env.ndjson");
    let o = Command::new(env!("CARGO_BIN_EXE_harm"))
        .args(["universal", "--group", "S3"])
        .env("HARM_CACHE", &cache)
        .output()
        .unwrap();
    assert!(o.status.success());
    let first = std::fs::read_to_string(&cache).unwrap();
    let rec: Value = serde_json::from_str(first.lines().next().unwrap()).unwrap();
    for k in ["version", "key", "group", "sets", "policy", "degree", "dim", "run_seconds"] {
        assert!(rec.get(k).is_some(), "record lacks {k}");
    }
}

#[test]
fn closed_form_check_and_approximation() {
    let o = harm(&["closed-form", "--group", "I2(5)", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(line(&stdout(&o), "h-form: "), "1 + 2 h[1] + h[2] + h[1,1] + 2 h[3] + 2 h[4] + h[5]");
    let a = harm(&["approx", "--group", "S3", "--check"]);
    assert!(stdout(&a).contains("agrees with the exact table through degree 3"));
}

#[test]
fn quick_verification_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let o = harm(&["verify", "--suite", "quick", "--report", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["summary"]["fail"], 0);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() > 30);
    for c in checks {
        for k in ["id", "title", "source", "status", "expected", "computed"] {
            assert!(c.get(k).is_some());
        }
    }
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with('[')).count(), checks.len());
}
