use std::fs;
use std::process::{Command, Output};

fn pmdi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pmdi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).trim().to_string()
}

#[test]
fn solve_prints_value() {
    let out = pmdi(&["solve", "7", "10", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "3");
    assert_eq!(stdout(&pmdi(&["solve", "3", "7", "5"])), "1");
    assert_eq!(stdout(&pmdi(&["solve", "2", "10", "1"])), "5");
}

#[test]
fn solve_json_and_trace() {
    let out = pmdi(&["solve", "7", "10", "1", "--json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["value"], "3");

    let out = pmdi(&["solve", "7", "10", "1", "--trace"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["value"], "3");
    let levels = doc["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 2);
    assert_eq!(levels[0]["branch"], "RECURSE");
    assert_eq!(levels[0]["mu"], "2");
    assert_eq!(levels[0]["R"], "1");
    assert_eq!(levels[1]["branch"], "C_GE_A");
    assert_eq!(levels[1]["a"], "1");
    assert_eq!(levels[1]["b"], "3");
    assert_eq!(levels[1]["c_num"], "5");
    assert_eq!(levels[1]["c_den"], "2");
    assert_eq!(levels[1]["mu"], serde_json::Value::Null);
}

#[test]
fn solve_rejects_bad_input() {
    assert_eq!(pmdi(&["solve", "2", "10", "0"]).status.code(), Some(2));
    assert_eq!(pmdi(&["solve", "2", "0", "1"]).status.code(), Some(2));
    assert_eq!(pmdi(&["solve", "x", "10", "1"]).status.code(), Some(2));
    assert_eq!(pmdi(&["solve", "2", "10", "1/0"]).status.code(), Some(2));
}

#[test]
fn solve_with_oracle_agrees() {
    let out = pmdi(&["solve", "129", "367", "2/7", "--oracle"]);
    assert!(out.status.success());
}

#[test]
fn quotient_command() {
    assert_eq!(stdout(&pmdi(&["quotient", "3", "5", "2", "--oracle"])), "3");
    assert_eq!(stdout(&pmdi(&["quotient", "3", "5", "1"])), "3");
    assert_eq!(pmdi(&["quotient", "4", "6", "2"]).status.code(), Some(2));
}

#[test]
fn interval_command() {
    assert_eq!(stdout(&pmdi(&["interval", "51/20", "49/10", "--oracle"])), "3");
    assert_eq!(stdout(&pmdi(&["interval", "1/2", "3/4"])), "1");
    assert_eq!(pmdi(&["interval", "3/4", "1/2"]).status.code(), Some(2));
}

#[test]
fn frobenius_command() {
    assert_eq!(stdout(&pmdi(&["frobenius", "2", "5", "--oracle"])), "2");
    assert_eq!(stdout(&pmdi(&["frobenius", "3", "5", "--oracle"])), "3");
    assert_eq!(pmdi(&["frobenius", "5", "5"]).status.code(), Some(2));
}

#[test]
fn batch_preserves_order_and_reports_errors() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.csv");
    let output = dir.path().join("out.csv");
    fs::write(&input, "# comment\n7,10,1\n2,10,1\n7,0,1\n4,10,2\n").unwrap();

    let out = pmdi(&[
        "batch",
        input.to_str().unwrap(),
        output.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let written = fs::read_to_string(&output).unwrap();
    let rows: Vec<&str> = written.lines().collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0], "7,10,1,3");
    assert_eq!(rows[1], "2,10,1,5");
    assert_eq!(rows[2], "7,0,1,ERROR:modulus must be positive");
    assert_eq!(rows[3], "4,10,2,3");
    let summary = String::from_utf8_lossy(&out.stderr);
    assert!(summary.contains("3 solved"), "summary was: {summary}");
}

#[test]
fn batch_clean_file_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.csv");
    let output = dir.path().join("out.csv");
    fs::write(&input, "7,10,1\n").unwrap();
    let out = pmdi(&["batch", input.to_str().unwrap(), output.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(&output).unwrap(), "7,10,1,3\n");
}

#[test]
fn batch_missing_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = pmdi(&[
        "batch",
        dir.path().join("absent.csv").to_str().unwrap(),
        dir.path().join("out.csv").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fuzz_is_deterministic_and_clean() {
    let args = &["fuzz", "--seed", "42", "--count", "300", "--max-b", "400"];
    let first = pmdi(args);
    assert!(first.status.success());
    assert_eq!(stdout(&first), "300 OK");
    let second = pmdi(args);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn fuzz_rejects_zero_count() {
    assert_eq!(pmdi(&["fuzz", "--count", "0"]).status.code(), Some(2));
}

#[test]
fn bench_emits_csv_with_depth_bound() {
    let out = pmdi(&["bench", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "k,a,b,c,L,depth,chain,solve_ns,naive_ns");
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 9);
        let depth: usize = fields[5].parse().unwrap();
        let chain: usize = fields[6].parse().unwrap();
        assert!(depth <= chain);
        assert_ne!(fields[8], "skipped"); // b near 10^4 keeps the scan on
    }
    assert_eq!(pmdi(&["bench", "3"]).status.code(), Some(2));
    assert_eq!(pmdi(&["bench", "19"]).status.code(), Some(2));
}
