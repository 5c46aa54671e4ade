use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn pliable(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pliable")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

fn report(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

#[test]
fn analyze_single_nested_pair_problem() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "p.json", r#"{"m":3,"receivers":[[],[1],[2],[1,2],[2,3]]}"#);
    let out = pliable(&["analyze", "--input", &input, "--oracle"]);
    let r = report(&out);
    assert_eq!(r["exact"], 2);
    assert_eq!(r["class"], "union-not-full");
    assert_eq!(r["lower_bound"], 2);
    assert_eq!(r["upper_bound"], 2);
    assert_eq!(r["receivers"], 5);
    assert_eq!(r["absent_count"], 2);
    assert_eq!(r["certificates"]["upper"]["oracle"]["beta"], 2);
    // top-level keys come out in a fixed order
    let text = String::from_utf8(out.stdout).unwrap();
    let at: Vec<usize> =
        ["m", "receivers", "absent_count", "class", "lower_bound", "upper_bound", "exact", "certificates"]
            .iter()
            .map(|k| text.find(&format!("\n  \"{k}\":")).unwrap_or_else(|| panic!("missing {k}")))
            .collect();
    assert!(at.windows(2).all(|w| w[0] < w[1]), "{at:?}");
}

#[test]
fn analyze_accepts_absent_lists() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "p.json", r#"{"m":5,"absent":[[3],[1,2,3],[3,4,5]]}"#);
    let r = report(&pliable(&["analyze", "--input", &input]));
    assert_eq!(r["class"], "perfectly-nested(2)");
    assert_eq!(r["exact"], 3);
    assert_eq!(r["certificates"]["upper"]["length"], 3);
}

#[test]
fn verbose_reports_embed_the_game_table() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "p.json", r#"{"m":2,"receivers":[[]]}"#);
    let plain = report(&pliable(&["analyze", "--input", &input]));
    assert!(plain["certificates"]["lower"].get("table").is_none());
    let verbose = report(&pliable(&["analyze", "--input", &input, "--verbose"]));
    assert_eq!(verbose["certificates"]["lower"]["table"].as_array().unwrap().len(), 4);
    assert_eq!(plain["certificates"]["lower"]["table_sha256"], verbose["certificates"]["lower"]["table_sha256"]);
}

#[test]
fn invalid_inputs_exit_with_two() {
    let dir = TempDir::new().unwrap();
    for (name, body) in [
        ("full.json", r#"{"m":2,"receivers":[[1,2]]}"#),
        ("range.json", r#"{"m":2,"receivers":[[3]]}"#),
        ("both.json", r#"{"m":2,"receivers":[[]],"absent":[[1]]}"#),
        ("dup.json", r#"{"m":2,"receivers":[[1],[1]]}"#),
        ("junk.json", "not json"),
    ] {
        let input = write(dir.path(), name, body);
        let out = pliable(&["analyze", "--input", &input]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        assert!(out.stdout.is_empty(), "{name}");
        assert!(!out.stderr.is_empty(), "{name}");
    }
    assert_eq!(pliable(&["analyze", "--input", "/definitely/missing.json"]).status.code(), Some(2));
    assert_eq!(pliable(&["verify", "--q", "4"]).status.code(), Some(2));
}

#[test]
fn oracle_beyond_its_limits_exits_with_three() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "big.json", r#"{"m":7,"absent":[[1]]}"#);
    assert_eq!(pliable(&["analyze", "--input", &input, "--oracle"]).status.code(), Some(3));
    assert!(pliable(&["analyze", "--input", &input]).status.success());
}

#[test]
fn generate_is_deterministic_and_byte_exact() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = pliable(&[
            "generate",
            "random",
            "--m",
            "6",
            "--absent",
            "9",
            "--seed",
            "42",
            "--output",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let stdout = pliable(&["generate", "random", "--m", "6", "--absent", "9", "--seed", "42"]).stdout;
    assert_eq!(stdout, fs::read(&a).unwrap());
    let other = pliable(&["generate", "random", "--m", "6", "--absent", "9", "--seed", "43"]).stdout;
    assert_ne!(stdout, other);

    let doc: Value = serde_json::from_slice(&stdout).unwrap();
    assert_eq!(doc["receivers"].as_array().unwrap().len(), 63 - 9);
}

#[test]
fn generate_complete_s() {
    let out = pliable(&["generate", "complete-s", "--m", "4", "--sizes", "1,2"]);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["m"], 4);
    let receivers = doc["receivers"].as_array().unwrap();
    assert_eq!(receivers.len(), 10);
    assert_eq!(receivers[0], serde_json::json!([1]));
    assert_eq!(receivers[9], serde_json::json!([3, 4]));
}

#[test]
fn generated_nested_problem_analyses_to_its_depth() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("nested.json");
    let path = path.to_str().unwrap();
    let out = pliable(&[
        "generate",
        "perfectly-nested",
        "--m",
        "5",
        "--p0",
        "3",
        "--block",
        "1,2",
        "--block",
        "4,5",
        "--output",
        path,
    ]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(doc["receivers"].as_array().unwrap().len(), 31 - 3);

    let r = report(&pliable(&["analyze", "--input", path, "--oracle"]));
    assert_eq!(r["class"], "perfectly-nested(2)");
    assert_eq!(r["exact"], 3);

    let crit = report(&pliable(&["criticality", "--input", path]));
    assert_eq!(crit["critical"], true);
    let augs = crit["augmentations"].as_array().unwrap();
    assert_eq!(augs.len(), 3);
    assert!(augs.iter().all(|a| a["verdict"] == "strict-increase"));
}

#[test]
fn bad_partitions_are_rejected() {
    let out = pliable(&["generate", "perfectly-nested", "--m", "4", "--p0", "1", "--block", "1,2", "--block", "3,4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_suites_report_per_suite_status() {
    let out = pliable(&["verify", "--suite", "game-oracle", "--max-m", "3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let summary: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(summary["passed"], true);
    assert_eq!(summary["suites"][0]["suite"], "game-oracle");

    let out = pliable(&["verify", "--suite", "lemma4", "--trials", "1000"]);
    assert!(out.status.success());

    assert_eq!(pliable(&["verify", "--suite", "no-such-suite"]).status.code(), Some(2));
}

#[test]
fn verify_complete_s_depends_on_the_field() {
    let binary = pliable(&["verify", "--suite", "complete-s"]);
    assert_eq!(binary.status.code(), Some(1));
    let summary: Value = serde_json::from_slice(&binary.stdout).unwrap();
    assert_eq!(summary["suites"][0]["counterexamples"][0], "m=4 S=2..3: oracle 3, expected 2");

    let larger = pliable(&["verify", "--suite", "complete-s", "--q", "5", "--max-m", "5"]);
    assert!(larger.status.success());
}
