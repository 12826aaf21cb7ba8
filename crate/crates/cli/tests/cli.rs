//! CLI behaviors: exit-code contract, schema printing, descriptor errors
//! and thread-count invariance of reports.

use std::process::Command;

fn zadic(args: &[&str]) -> (Option<i32>, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_zadic"))
        .args(args)
        .current_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/../.."))
        .output()
        .expect("spawn zadic");
    (
        out.status.code(),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn zadic_env(args: &[&str], key: &str, value: &str) -> (Option<i32>, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_zadic"))
        .args(args)
        .env(key, value)
        .current_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/../.."))
        .output()
        .expect("spawn zadic");
    (
        out.status.code(),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

#[test]
fn schema_flag_prints_valid_json_schema() {
    let (code, stdout, _) = zadic(&["--schema"]);
    assert_eq!(code, Some(0));
    let schema: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(schema["title"], "zadic report");
    assert_eq!(schema["properties"]["schema_version"]["const"], "1");
}

#[test]
fn usage_errors_exit_2() {
    let (code, _, _) = zadic(&["frobnicate"]);
    assert_eq!(code, Some(2));
    let (code, _, stderr) = zadic(&["zar", "--ring", "no-such-file.json", "--element", "t"]);
    assert_eq!(code, Some(2));
    assert!(stderr.contains("no-such-file.json"));
    // malformed descriptor: parse error with line/column
    let dir = std::env::temp_dir().join("zadic-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\n  \"carrier\": \n}\n").unwrap();
    let (code, _, stderr) = zadic(&["zar", "--ring", bad.to_str().unwrap(), "--element", "t"]);
    assert_eq!(code, Some(2));
    assert!(
        stderr.contains("line") && stderr.contains("column"),
        "{stderr}"
    );
}

#[test]
fn check_failures_exit_1() {
    // R(t/t) is not an open subset: a failed check, not a usage error
    let (code, stdout, _) = zadic(&[
        "spa",
        "--ring",
        "descriptors/qt3.json",
        "--subset",
        "R(t/t)",
        "--grid",
        "5",
    ]);
    assert_eq!(code, Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["status"], "fail");
}

#[test]
fn undecidable_exits_3() {
    // a formal quotient carrier is outside the decidable fragment
    let dir = std::env::temp_dir().join("zadic-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("quot.json");
    std::fs::write(
        &path,
        r#"{
  "carrier": {"quotient": {"base": {"poly_ring_over_q": "t"}, "ideal": ["t^2"]}},
  "ring_of_def": ["t"],
  "ideal_of_def": ["3"],
  "prime": 3
}"#,
    )
    .unwrap();
    let (code, stdout, _) = zadic(&["zar", "--ring", path.to_str().unwrap(), "--element", "7"]);
    assert_eq!(code, Some(3));
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["status"], "undecidable");
}

#[test]
fn thread_count_does_not_change_report_bytes() {
    let args = [
        "cech",
        "--ring",
        "descriptors/zint5.json",
        "--cover",
        "2,3",
        "--trials",
        "40",
        "--seed",
        "5",
    ];
    let (c1, seq) = zadic_env(&args, "ZADIC_THREADS", "1");
    let (c4, par) = zadic_env(&args, "ZADIC_THREADS", "4");
    assert_eq!(c1, Some(0));
    assert_eq!(c4, Some(0));
    assert_eq!(seq, par, "parallel sweep changed the report bytes");
}

#[test]
fn quotient_and_tensor_emit_descriptors() {
    let (code, stdout, _) = zadic(&["quotient", "--ring", "descriptors/qt3.json", "--ideal", "t"]);
    assert_eq!(code, Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["witnesses"]["result"]["carrier"], "Q");

    let (code, stdout, _) = zadic(&[
        "tensor",
        "--left",
        "descriptors/qt3.json",
        "--right",
        "descriptors/qx3.json",
        "--base",
        "descriptors/q3.json",
    ]);
    assert_eq!(code, Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert!(report["witnesses"]["result"]["carrier"]["tensor"].is_object());
}

#[test]
fn timing_flag_is_opt_in_and_off_the_determinism_contract() {
    let args = ["zar", "--ring", "descriptors/qt3.json", "--element", "7"];
    let (_, without, _) = zadic(&args);
    assert!(!without.contains("timing_ms"));
    let mut with_timing: Vec<&str> = args.to_vec();
    with_timing.push("--timing");
    let (_, with, _) = zadic(&with_timing);
    assert!(with.contains("timing_ms"));
}

#[test]
fn out_flag_duplicates_stdout() {
    let dir = std::env::temp_dir().join("zadic-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let (code, stdout, _) = zadic(&[
        "zar",
        "--ring",
        "descriptors/qt3.json",
        "--element",
        "1+3*t",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, Some(0));
    let file = std::fs::read_to_string(&path).unwrap();
    assert_eq!(stdout, file);
}
