use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_formwidth"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).trim().to_string()
}

fn json(args: &[&str]) -> Value {
    let out = run(&[&["--json"], args].concat());
    assert_eq!(out.status.code(), Some(0), "{args:?}: {out:?}");
    serde_json::from_str(&stdout(&out)).unwrap()
}

#[test]
fn fw_text_and_json() {
    let out = run(&["fw", "abcacb"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "3");
    assert_eq!(json(&["fw", "0,1,0,1,0"])["fw"], 4);
}

#[test]
fn exhausted_width_exits_with_three() {
    let out = run(&["fw", "ababab", "--s-max", "3"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn parse_errors_exit_with_two() {
    for args in [
        &["fw", "ab-c"][..],
        &["fw", ""],
        &["bounds", "c=1;e=1"],
        &["nonsense"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn ex_json_shape() {
    let v = json(&["ex", "abab", "--n", "4"]);
    assert_eq!(v["max_length"], 7);
    assert_eq!(v["sparsity"], 2);
    assert_eq!(v["witness"], serde_json::json!([0, 1, 0, 2, 0, 3, 0]));
    assert!(v["nodes_explored"].as_u64().unwrap() > 0);
}

#[test]
fn tight_length_cap_exits_with_three() {
    let out = run(&["ex", "abab", "--n", "6", "--length-cap", "8"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn constructions() {
    let v = json(&["construct", "es-avoider", "3", "2"]);
    assert_eq!(v["rows"], serde_json::json!([[0, 1, 2, 3], [2, 3, 0, 1]]));
    assert_eq!(stdout(&run(&["construct", "up", "3", "2"])), "0,1,2,0,1,2");
    assert_eq!(stdout(&run(&["construct", "d", "3"])), "2,1,0");
    assert_eq!(
        stdout(&run(&["construct", "two-letter-avoider", "abab"])),
        "01|10|01"
    );
}

#[test]
fn metrics_and_queries() {
    assert_eq!(json(&["l", "abccba"])["l"], 4);
    assert_eq!(json(&["r", "abccba"])["r"], 2);
    let b = json(&["bounds", "c=3;e=1,1,1"]);
    assert_eq!(b["bounds"]["l_value"], 5);
    assert_eq!(b["bounds"]["fw_upper"], 7);
    assert_eq!(json(&["contains", "abcacb", "aba"])["contains"], true);
    assert_eq!(json(&["sparse", "abcabc", "--r", "3"])["sparse"], true);
    assert_eq!(json(&["fl", "abab"])["fl"], 2);
}

#[test]
fn verify_filter_and_threads() {
    let out = run(&["--threads", "2", "verify", "--filter", "ex/*"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with("PASS")).collect();
    assert!(!lines.is_empty());
    let mut sorted = lines.clone();
    sorted.sort();
    assert_eq!(lines, sorted);
}

#[test]
fn verify_reports_failures() {
    let dir = std::env::temp_dir().join(format!("formwidth-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let manifest = dir.join("wrong.tsv");
    std::fs::write(
        &manifest,
        "fw/wrong\tfw-equals\tabab\t4\tdeliberately wrong\n",
    )
    .unwrap();
    let out = run(&["verify", "--manifest", manifest.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
    std::fs::remove_dir_all(&dir).ok();
}
