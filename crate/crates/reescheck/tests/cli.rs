//! End-to-end runs of the `reescheck` binary: report shape, replay
//! determinism, witness verification, form-file input, and the exit
//! code contract.

use serde_json::Value;
use std::path::Path;
use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_reescheck"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        output.status.code().expect("exit code"),
        String::from_utf8(output.stdout).expect("utf-8 stdout"),
        String::from_utf8(output.stderr).expect("utf-8 stderr"),
    )
}

fn parse(stdout: &str) -> Value {
    serde_json::from_str(stdout).expect("stdout is one JSON document")
}

fn strip_volatile(stdout: &str) -> String {
    stdout
        .lines()
        .filter(|l| !l.contains("\"timestamp_unix_secs\"") && !l.contains("\"wall_ms\""))
        .collect::<Vec<_>>()
        .join("\n")
}

fn outcome(report: &Value, name: &str) -> String {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("check {name} present"))["outcome"]
        .as_str()
        .unwrap()
        .to_owned()
}

#[test]
fn syzygy_replays_byte_identically() {
    let (code, first, _) = run(&["syzygy", "--degree", "5", "--seed", "3"]);
    assert_eq!(code, 0);
    let (code, second, _) = run(&["syzygy", "--degree", "5", "--seed", "3"]);
    assert_eq!(code, 0);
    assert_eq!(strip_volatile(&first), strip_volatile(&second));
    let report = parse(&first);
    assert_eq!(report["all_passed"], true);
    assert_eq!(report["tool"], "reescheck");
    assert_eq!(
        report["checks"][0]["details"]["computed"],
        serde_json::json!([2, 3])
    );
}

#[test]
fn rank_report_verifies_from_its_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rank.json");
    let (code, _, _) = run(&[
        "rank",
        "--degree",
        "7",
        "--seed",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let (code, stdout, _) = run(&["--verify", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.contains("verify rank_certificate_phi: ok"));
    assert!(stdout.contains("verify rank_certificate_random: ok"));
}

#[test]
fn rr_verify_catches_a_tampered_cofactor() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rr.json");
    let (code, _, _) = run(&[
        "rr",
        "--degree",
        "5",
        "--seed",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let (code, stdout, _) = run(&["--verify", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(stdout.matches(": ok").count(), 4);

    let mut report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let cofactor = report["checks"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|c| c["name"] == "closure_content_route")
        .unwrap()["details"]["targets"][0]["cofactors"][0]["form"]["coeffs"][0]
        .take();
    let tampered = match cofactor.as_str().unwrap() {
        "1" => "2".to_owned(),
        v => format!("1{v}"),
    };
    report["checks"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|c| c["name"] == "closure_content_route")
        .unwrap()["details"]["targets"][0]["cofactors"][0]["form"]["coeffs"][0] = tampered.into();
    std::fs::write(&path, serde_json::to_string(&report).unwrap()).unwrap();
    let (code, stdout, _) = run(&["--verify", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stdout.contains("MISMATCH"));
}

#[test]
fn depth_general_and_example_reports_pass() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("depth.json");
    let (code, stdout, _) = run(&[
        "depth",
        "--degree",
        "5",
        "--seed",
        "6",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let report = parse(&stdout);
    assert_eq!(outcome(&report, "reduction_number"), "pass");
    assert_eq!(outcome(&report, "closed_form_cross_checks"), "pass");
    assert_eq!(outcome(&report, "closure_strictly_larger"), "pass");
    let (code, stdout, _) = run(&["--verify", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.contains("verify lambda_rung[3]: ok"));

    let (code, stdout, _) = run(&["depth", "--example", "b"]);
    assert_eq!(code, 0);
    let report = parse(&stdout);
    assert_eq!(report["all_passed"], true);
    assert_eq!(outcome(&report, "colon_ji2_i3_is_maximal_ideal"), "pass");
    let ladder = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "lambda_ladder")
        .unwrap();
    assert_eq!(ladder["details"]["lambdas"], serde_json::json!([9, 3, 1, 1, 1]));
}

fn write_file(path: &Path, content: &str) {
    std::fs::write(path, content).unwrap();
}

#[test]
fn form_files_feed_both_grammars() {
    let dir = tempfile::tempdir().unwrap();
    let forms = dir.path().join("forms.json");
    write_file(
        &forms,
        r#"{
  "field": "gfp:101",
  "forms": [
    {"degree": 5, "coeffs": ["1", "0", "0", "0", "0", "3"]},
    {"degree": 5, "coeffs": ["0", "1", "0", "0", "2", "0"]},
    {"degree": 5, "coeffs": ["0", "0", "1", "1", "0", "0"]}
  ]
}"#,
    );
    let (code, stdout, _) = run(&["syzygy", "--input", forms.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(parse(&stdout)["all_passed"], true);

    let matrix = dir.path().join("matrix.json");
    write_file(
        &matrix,
        r#"{
  "field": "rational",
  "hilbert_burch": [
    [{"coeffs": ["0", "0", "0", "1"]}, {"coeffs": ["0", "1", "0", "0"]}],
    [{"coeffs": ["0", "0", "1", "0"]}, {"coeffs": ["-1", "0", "0", "1"]}],
    [{"coeffs": ["1", "0", "0", "0"]}, {"coeffs": ["0", "1", "-1", "0"]}]
  ]
}"#,
    );
    let (code, stdout, _) = run(&["depth", "--input", matrix.to_str().unwrap(), "--seed", "7"]);
    assert_eq!(code, 0);
    let report = parse(&stdout);
    assert_eq!(report["all_passed"], true);
    assert_eq!(outcome(&report, "reduction_number"), "recorded");
    let verdict = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "huckaba_marley_verdict")
        .unwrap();
    assert_eq!(verdict["details"]["verdict"], "almost_cm");
}

#[test]
fn exit_codes_follow_the_contract() {
    let (code, _, stderr) = run(&["rank", "--degree", "6"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("depth pipeline"));

    let (code, _, _) = run(&["rr", "--degree", "6", "--seed", "1"]);
    assert_eq!(code, 2);

    let (code, stdout, _) = run(&[
        "rr",
        "--degree",
        "8",
        "--seed",
        "1",
        "--method",
        "colon",
        "--exploratory",
    ]);
    assert_eq!(code, 0);
    assert_eq!(outcome(&parse(&stdout), "closure_colon_route"), "recorded");

    let (code, _, _) = run(&["syzygy", "--seed", "1"]);
    assert_eq!(code, 2, "missing degree is a config error");

    let (code, _, _) = run(&["--verify", "/nonexistent/report.json"]);
    assert_eq!(code, 2);

    let (code, _, _) = run(&[]);
    assert_eq!(code, 2);

    let (code, _, _) = run(&["rank", "--degree", "5", "--strategy", "bogus"]);
    assert_eq!(code, 2);
}
