//! End-to-end tests of the `eabp` binary: exit codes, JSON payload shapes,
//! and byte-level determinism of the output.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn eabp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eabp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn write_temp(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f
}

/// n = 1, nu = 2 tensor with male rows (0.3, 0.7) and (0.7, 0.3), plus the
/// elements used by the product commands.
const TENSOR_A03: &str = r#"{
    "n": 1, "nu": 2,
    "pf": [[[1.0], [1.0]]],
    "pm": [[[0.3, 0.7], [0.7, 0.3]]],
    "z": {"x": [1.0], "y": [1.0, 0.0]},
    "t": {"x": [1.0], "y": [0.0, 1.0]}
}"#;

const TENSOR_1X1: &str = r#"{
    "n": 1, "nu": 1,
    "pf": [[[1.0]]],
    "pm": [[[1.0]]],
    "z": {"x": [0.5], "y": [0.5]}
}"#;

const PAIR_IDENTITY: &str = r#"{"A": [[1.0, 0.0], [0.0, 1.0]], "B": [[1.0, 0.0], [0.0, 1.0]]}"#;

#[test]
fn validate_roundtrip() {
    let f = write_temp(TENSOR_A03);
    let out = eabp(&["validate", "--input", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let payload = stdout_json(&out);
    assert_eq!(payload["ok"], Value::Bool(true));
    assert_eq!(payload["n"], 1);
    assert_eq!(payload["nu"], 2);
}

#[test]
fn validate_rejects_bad_rows_with_exit_2() {
    let f = write_temp(r#"{"n":1,"nu":2,"pf":[[[1.0],[1.0]]],"pm":[[[0.3,0.6],[0.7,0.3]]]}"#);
    let out = eabp(&["validate", "--input", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let payload = stdout_json(&out);
    assert_eq!(payload["error"]["code"], "stochasticity_violation");
}

#[test]
fn unknown_subcommand_exits_2() {
    let out = eabp(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["error"]["code"], "usage");
}

#[test]
fn mul_matches_hand_value() {
    // z = e^f + e^m_1, t = e^f + e^m_2 over the a = 0.3, b = 0.7 tensor:
    // z t = e^f e^m_2 + e^m_1 e^f + (cross terms of the same-sex parts
    // vanish), giving x = 1, y = (0.5, 0.5).
    let f = write_temp(TENSOR_A03);
    let out = eabp(&["mul", "--input", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let payload = stdout_json(&out);
    let x = payload["result"]["x"][0].as_f64().unwrap();
    let y0 = payload["result"]["y"][0].as_f64().unwrap();
    let y1 = payload["result"]["y"][1].as_f64().unwrap();
    assert!((x - 1.0).abs() < 1e-12);
    assert!((y0 - 0.5).abs() < 1e-12);
    assert!((y1 - 0.5).abs() < 1e-12);
}

#[test]
fn power_reproduces_plenary_value() {
    let with_ab01 = TENSOR_A03.replace("0.3, 0.7", "0.0, 1.0").replace("0.7, 0.3", "1.0, 0.0");
    let f = write_temp(&with_ab01);
    let out = eabp(&["power", "--t", "2", "--input", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let payload = stdout_json(&out);
    assert!((payload["result"]["y"][0].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!(payload["result"]["y"][1].as_f64().unwrap().abs() < 1e-12);
}

#[test]
fn trajectory_masses_follow_doubling() {
    let f = write_temp(TENSOR_1X1);
    let out = eabp(&[
        "trajectory",
        "--steps",
        "3",
        "--input",
        f.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let payload = stdout_json(&out);
    assert_eq!(payload["classification"], "H0");
    let xs: Vec<f64> = payload["xy_values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p[0].as_f64().unwrap())
        .collect();
    assert_eq!(xs, vec![0.5, 0.25, 0.0625, 0.00390625]);
}

#[test]
fn long_trajectories_subsample_with_index_list() {
    let f = write_temp(TENSOR_1X1);
    let out = eabp(&[
        "trajectory",
        "--steps",
        "100",
        "--input",
        f.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let payload = stdout_json(&out);
    let states = payload["states"].as_array().unwrap().len();
    let indices = payload["indices"].as_array().unwrap();
    assert!(states <= 65);
    assert_eq!(states, indices.len());
    assert_eq!(indices.last().unwrap(), 100);
    // The mass trace stays complete even when states are subsampled.
    assert_eq!(payload["xy_values"].as_array().unwrap().len(), 101);
}

#[test]
fn classify_reads_bare_element() {
    let f = write_temp(r#"{"z": {"x": [2.0], "y": [1.0]}}"#);
    let out = eabp(&["classify", "--input", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["classification"], "H_infinity");
}

#[test]
fn recurrence_check_succeeds() {
    let f = write_temp(TENSOR_1X1);
    let out = eabp(&[
        "recurrence",
        "--steps",
        "4",
        "--input",
        f.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["ok"], Value::Bool(true));
}

#[test]
fn derivations_payload_shape() {
    let f = write_temp(TENSOR_A03);
    let out = eabp(&["derivations", "--input", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let payload = stdout_json(&out);
    assert_eq!(payload["dimension"], 1);
    assert_eq!(payload["system_rows"], 21);
    assert_eq!(payload["system_cols"], 9);
    assert!(payload["leibniz_residuals"][0].as_f64().unwrap() <= 1e-9);
}

#[test]
fn properties_runs_all_five() {
    let f = write_temp(TENSOR_A03);
    let out = eabp(&["properties", "--input", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let reports = stdout_json(&out)["reports"].as_array().unwrap().clone();
    assert_eq!(reports.len(), 5);
    let verdict = |name: &str| -> String {
        reports.iter().find(|r| r["property"] == name).unwrap()["verdict"]
            .as_str()
            .unwrap()
            .to_string()
    };
    assert_eq!(verdict("associativity"), "fails");
    assert_eq!(verdict("power_associativity"), "fails");
    assert_eq!(verdict("character"), "none_found");
    assert_eq!(verdict("dibaric"), "holds");
    assert_eq!(verdict("norm_bound"), "holds");
}

#[test]
fn characters_certificate() {
    let f = write_temp(TENSOR_A03);
    let out = eabp(&["characters", "--input", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let payload = stdout_json(&out);
    assert_eq!(payload["characters"].as_array().unwrap().len(), 0);
    assert!(payload["certificate"]["max_residual"].as_f64().unwrap() <= 1e-12);
}

#[test]
fn special_classify_labels_pinned_point() {
    let f = write_temp(
        r#"{"A": [[1.0, 0.0], [0.0, 1.0]], "B": [[1.0, 0.0], [0.0, 1.0]],
            "z": {"x": [1.0, 0.0], "y": [0.0, 1.0]}}"#,
    );
    let out = eabp(&["special", "classify", "--input", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["label"], "I0");
}

#[test]
fn special_nilpotents_identity() {
    let f = write_temp(PAIR_IDENTITY);
    let out = eabp(&["special", "nilpotents", "--input", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let set = stdout_json(&out)["nilpotents"].clone();
    assert!(!set["families"].as_array().unwrap().is_empty());
    assert!(set["unresolved"].as_array().unwrap().is_empty());
}

#[test]
fn verify_oracle_on_random_pair() {
    let f = write_temp(r#"{"A": [[0.6, 0.4], [0.3, 0.7]], "B": [[0.2, 0.8], [0.5, 0.5]]}"#);
    let out = eabp(&[
        "verify",
        "--oracle",
        "--grid",
        "5",
        "--input",
        f.path().to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stdout: {}",
        String::from_utf8_lossy(&out.stdout)
    );
    let payload = stdout_json(&out);
    assert_eq!(payload["ok"], Value::Bool(true));
    assert!(payload["idempotents"]["oracle_roots"].as_u64().unwrap() >= 2);
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let f = write_temp(TENSOR_A03);
    let args = [
        "trajectory",
        "--steps",
        "5",
        "--seed",
        "7",
        "--input",
        f.path().to_str().unwrap(),
    ];
    let a = eabp(&args);
    let b = eabp(&args);
    assert_eq!(a.stdout, b.stdout);
    // Exactly one JSON document on stdout.
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text.trim().lines().count(), 1);
}

#[test]
fn text_format_renders_key_values() {
    let f = write_temp(TENSOR_A03);
    let out = eabp(&[
        "validate",
        "--format",
        "text",
        "--input",
        f.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("ok = true"));
}
