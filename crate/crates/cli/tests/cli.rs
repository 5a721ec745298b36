//! End-to-end runs of the `agg` binary.

use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn agg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_agg"))
        .args(args)
        .env_remove("AGG_BUDGET")
        .output()
        .expect("agg runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn corpus(name: &str) -> String {
    format!("{}/../../corpus/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn check_reports_laws_and_rendered_witnesses() {
    let out = agg(&["check", &corpus("ag9")]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["order"], 9);
    assert_eq!(r["gamma"], serde_json::json!(["alpha", "beta"]));
    assert_eq!(r["laws"]["left_invertive"], true);
    assert_eq!(r["laws"]["commutative"], false);
    assert_eq!(r["witnesses"]["commutative"]["rendered"], "1 alpha 2 ≠ 2 alpha 1");
    assert!(r["witnesses"].get("left_invertive").is_none());
}

#[test]
fn corpus_names_load_like_files() {
    let by_name = agg(&["check", "ir5"]);
    let by_path = agg(&["check", &corpus("ir5")]);
    assert_eq!(by_name.stdout, by_path.stdout);
}

#[test]
fn ideals_and_classify() {
    let out = agg(&["ideals", "ir5", "--kind", "two_sided", "--names"]);
    assert_eq!(out.status.code(), Some(0));
    let ideals = json(&out);
    assert!(ideals
        .as_array()
        .unwrap()
        .iter()
        .any(|i| i == &serde_json::json!(["a", "b"])));

    let out = agg(&["classify", "ir5", r#"["a","b"]"#]);
    assert_eq!(out.status.code(), Some(0));
    let kinds = json(&out)["kinds"].clone();
    assert!(kinds.as_array().unwrap().contains(&Value::from("two_sided")));
}

#[test]
fn witness_renders_the_least_factorization() {
    let out = agg(&["witness", "ir5", "--element", "c"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["rendered"], "c = (c 1 (c 1 c)) 1 d");
}

#[test]
fn fuzzy_product_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.json");
    let g = dir.path().join("g.json");
    fs::write(&f, r#"{"den": 2, "num": [0, 0, 1, 0, 0]}"#).unwrap();
    fs::write(&g, r#"{"den": 10, "num": [0, 0, 0, 7, 0]}"#).unwrap();
    let out = agg(&["fuzzy", "product", "ir5", f.to_str().unwrap(), g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let p = json(&out);
    assert_eq!(p["num"][4], 1);
    assert_eq!(p["den"], 2);
}

#[test]
fn verify_exit_codes_follow_the_verdict() {
    let holds = agg(&["verify", "ir5", "--theorem", "grand_equiv", "--lattice", "2"]);
    assert_eq!(holds.status.code(), Some(0));
    assert_eq!(json(&holds)["status"], "holds");

    let dir = tempfile::tempdir().unwrap();
    let pair = dir.path().join("pair.json");
    fs::write(
        &pair,
        r#"{"order": 2, "gamma": ["g"], "tables": {"g": [[1, 1], [1, 1]]}}"#,
    )
    .unwrap();
    let refuted = agg(&["verify", pair.to_str().unwrap(), "--theorem", "sf"]);
    assert_eq!(refuted.status.code(), Some(1));
    let v = json(&refuted);
    assert_eq!(v["status"], "counterexample");
    assert!(v["witness"]["subsets"].is_array());

    let unknown = agg(&["verify", "ir5", "--theorem", "no_such_statement"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(unknown.stdout.is_empty());
}

#[test]
fn verify_all_reports_capacity_without_failing() {
    let out = agg(&["verify", "ir5", "--theorem", "all", "--lattice", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let batch = json(&out);
    assert_eq!(batch["lattice"], 2);
    assert_eq!(batch["results"]["trm_i"]["status"], "capacity");
    assert_eq!(batch["results"]["l145"]["status"], "holds");
}

#[test]
fn sampled_mode_is_reproducible() {
    let args = [
        "verify",
        "ir5",
        "--theorem",
        "trm_i",
        "--lattice",
        "4",
        "--mode",
        "sampled:9:50",
    ];
    let a = agg(&args);
    let b = agg(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn missing_structure_is_a_usage_error() {
    let out = agg(&["check", "/nonexistent/structure.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn enumerate_counts_and_emits_deterministically() {
    let out = agg(&["enumerate", "--order", "3", "--laws", "left_invertive", "--count"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out), 20);

    let (d1, d2) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let args = |d: &tempfile::TempDir| {
        let dir = d.path().join("models").to_str().unwrap().to_string();
        agg(&[
            "enumerate",
            "--order",
            "2",
            "--gamma",
            "2",
            "--laws",
            "left_invertive",
            "--emit",
            &dir,
            "--jobs",
            "2",
        ])
    };
    let (a, b) = (args(&d1), args(&d2));
    assert_eq!(a.stdout, b.stdout);
    let listing = json(&a);
    assert_eq!(listing["count"], 7);
    for name in listing["files"].as_array().unwrap() {
        let name = name.as_str().unwrap();
        let p1 = fs::read(d1.path().join("models").join(name)).unwrap();
        let p2 = fs::read(d2.path().join("models").join(name)).unwrap();
        assert_eq!(p1, p2);
        // Every emitted file is itself a loadable structure satisfying the law.
        let path = d1.path().join("models").join(name);
        let r = json(&agg(&["check", path.to_str().unwrap()]));
        assert_eq!(r["laws"]["left_invertive"], true);
    }
}

#[test]
fn search_budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_agg"))
        .args(["enumerate", "--order", "4", "--laws", "left_invertive", "--count"])
        .env("AGG_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn find_returns_the_smallest_structure() {
    let out = agg(&["find", "non_commutative_ag", "--max-order", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let m = json(&out);
    assert_eq!(m["order"], 3);
    let none = agg(&["find", "non_commutative_ag", "--max-order", "2"]);
    assert_eq!(none.status.code(), Some(1));
}

#[test]
fn theorems_lists_every_statement() {
    let out = agg(&["theorems"]);
    let list = json(&out);
    let ids: Vec<&str> = list
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["id"].as_str().unwrap())
        .collect();
    assert!(ids.contains(&"grand_equiv") && ids.contains(&"sf_left_identity"));
}
