use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn zsindex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zsindex"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = zsindex(args);
    let code = out.status.code().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    (code, serde_json::from_str(&stdout).unwrap_or(Value::Null))
}

#[test]
fn index_fixture() {
    let (code, v) = json(&["index", "--n", "1235", "13", "285", "975", "1197"]);
    assert_eq!(code, 0);
    assert_eq!(v["index"], 1);
    assert_eq!(v["witness_unit"], 9);
    assert_eq!(v["minimal"], true);
}

#[test]
fn index_trivial_witness() {
    let (code, v) = json(&["index", "--n", "25", "1", "1", "1", "22"]);
    assert_eq!(code, 0);
    assert_eq!(
        (v["index"].as_u64(), v["witness_unit"].as_u64()),
        (Some(1), Some(1))
    );
}

#[test]
fn index_not_zero_sum_is_flagged() {
    let (code, v) = json(&["index", "--n", "25", "1", "2", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["zero_sum"], false);
    assert_eq!(v["index"], Value::Null);
    let out = zsindex(&["index", "--n", "25", "1", "2", "3", "--format", "table"]);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("not zero-sum"));
}

#[test]
fn malformed_input_exits_2() {
    for args in [
        &["index", "--n", "25", "0", "3"][..],
        &["index", "--n", "25", "25"],
        &["index", "--n", "1", "1"],
        &["index", "--n", "25", "1", "1", "1", "1", "21"],
        &["index", "--n", "abc", "1"],
        &["certify", "--n", "25", "1", "2", "3", "4"],
        &["normalize", "--n", "25", "5", "20", "3", "22"],
        &[
            "certify",
            "--n",
            "25",
            "1",
            "1",
            "1",
            "22",
            "--strategy",
            "bogus",
        ],
        &["sweep", "--min-n", "4", "--max-n", "10"],
        &["sweep", "--min-n", "5", "--max-n", "10", "--jobs", "0"],
        &["audit"],
        &["nonsense"],
    ] {
        assert_eq!(zsindex(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn certify_published_certificates() {
    let (code, v) = json(&[
        "certify",
        "--n",
        "2635",
        "17",
        "510",
        "2170",
        "2573",
        "--strategy",
        "lemma22_1",
        "--k",
        "6",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["certificate"]["kind"], "interval");
    assert_eq!(
        (
            v["certificate"]["k"].as_u64(),
            v["certificate"]["m"].as_u64()
        ),
        (Some(6), Some(32))
    );

    let (code, v) = json(&[
        "certify",
        "--n",
        "1001",
        "11",
        "182",
        "847",
        "962",
        "--strategy",
        "lemma22_1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        (
            v["certificate"]["k"].as_u64(),
            v["certificate"]["m"].as_u64()
        ),
        (Some(1), Some(6))
    );
    assert_eq!(v["certificate"]["implied_unit"], 6);
}

#[test]
fn certify_default_waterfall_has_trace() {
    let (code, v) = json(&["certify", "--n", "1235", "13", "285", "975", "1197"]);
    assert_eq!(code, 0);
    assert_eq!(v["index"], 1);
    assert!(!v["trace"].as_array().unwrap().is_empty());
    assert_eq!(v["soundness_failures"].as_array().unwrap().len(), 0);
}

#[test]
fn certify_counterexample_exits_1() {
    let (code, v) = json(&["certify", "--n", "6", "1", "3", "4", "4"]);
    assert_eq!(code, 1);
    assert_eq!(v["counterexample"], true);
    assert_eq!(v["index"], 2);
}

#[test]
fn normalize_and_classify() {
    let (_, v) = json(&["normalize", "--n", "1235", "13", "285", "975", "1197"]);
    assert_eq!(v["normalized"], serde_json::json!([13, 285, 260, 38]));
    let (_, v) = json(&["classify", "--n", "1235", "13", "285", "975", "1197"]);
    assert_eq!(v["tag"], "a1");
    assert_eq!(v["labeled_primes"], serde_json::json!([13, 19, 5]));
}

#[test]
fn enumerate_first_ten() {
    let (code, v) = json(&["enumerate", "--n", "25", "--limit", "10"]);
    assert_eq!(code, 0);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 10);
    assert_eq!(rows[0]["terms"], serde_json::json!([1, 1, 1, 22]));
    let terms: Vec<Value> = rows.iter().map(|r| r["terms"].clone()).collect();
    let mut sorted = terms.clone();
    sorted.sort_by_key(|t| {
        t.as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_u64().unwrap())
            .collect::<Vec<_>>()
    });
    assert_eq!(terms, sorted);
}

#[test]
fn enumerate_includes_fixture() {
    let out = zsindex(&[
        "enumerate",
        "--n",
        "1235",
        "--pattern",
        "a1",
        "--normalizable",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "13,285,975,1197,"));
}

fn sweep_to(dir: &Path, name: &str, jobs: &str) -> (i32, Vec<u8>) {
    let path = dir.join(name);
    let out = zsindex(&[
        "sweep",
        "--min-n",
        "5",
        "--max-n",
        "150",
        "--jobs",
        jobs,
        "--out",
        path.to_str().unwrap(),
    ]);
    (out.status.code().unwrap(), std::fs::read(path).unwrap())
}

#[test]
fn sweep_clean_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (c1, a) = sweep_to(dir.path(), "j1.json", "1");
    let (c8, b) = sweep_to(dir.path(), "j8.json", "8");
    assert_eq!((c1, c8), (0, 0));
    assert_eq!(a, b);
    let v: Value = serde_json::from_slice(&a).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.first().unwrap()["n"], 5);
    assert_eq!(reports.last().unwrap()["n"], 149);
    for r in reports {
        assert_eq!(r["violations"].as_array().unwrap().len(), 0);
        assert_eq!(r["elapsed_ms"], Value::Null);
        assert_eq!(r["index_histogram"]["2"], 0);
    }
    // only the output file and nothing left over from the atomic write
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn sweep_off_hypothesis_exits_1() {
    let out = zsindex(&["sweep", "--min-n", "8", "--max-n", "30", "--include-all-n"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r["index_histogram"]["2"].as_u64() > Some(0)));
}

#[test]
fn sweep_csv_columns_are_fixed() {
    let out = zsindex(&["sweep", "--min-n", "5", "--max-n", "13", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,instances,orbits,unnormalizable,index_1,index_2,max_index,direct,notice1,notice2,small_a,\
         lemma22_1,lemma23,lemma22_2,renumber,oracle_only,none,violations,elapsed_ms"
    );
    assert_eq!(
        lines.next().unwrap().split(',').take(3).collect::<Vec<_>>(),
        ["5", "4", "1"]
    );
}

#[test]
fn sweep_unwritable_path_exits_2() {
    let out = zsindex(&[
        "sweep",
        "--min-n",
        "5",
        "--max-n",
        "7",
        "--out",
        "/nonexistent-dir/r.json",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn audit_1001_has_no_findings() {
    let (code, v) = json(&["audit", "--n", "1001"]);
    assert_eq!(code, 0);
    assert_eq!(v["findings"], serde_json::json!([]));
    assert!(v["examined"].as_u64().unwrap() > 0);
}

#[test]
fn audit_writes_findings_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("audit.json");
    let out = zsindex(&["audit", "--n", "1000,1001", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap();
    assert_eq!(v["findings"][0]["kind"], "invalid_modulus");
    assert_eq!(v["findings"].as_array().unwrap().len(), 1);
}

#[test]
fn find_counterexample_scan() {
    let (code, v) = json(&["find-counterexample", "--min-n", "5", "--max-n", "50"]);
    assert_eq!(code, 1);
    assert_eq!(v["found"]["n"], 6);
    assert_eq!(v["found"]["terms"], serde_json::json!([1, 3, 4, 4]));
    assert_eq!(v["found"]["transcript"].as_array().unwrap().len(), 2);

    let (code, v) = json(&["find-counterexample", "--n", "25"]);
    assert_eq!(code, 0);
    assert_eq!(v["found"], Value::Null);
}
