use std::path::Path;
use std::process::Command;

use num_complex::Complex64;
use qdd::dense;
use serde_json::Value;

fn qdd(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qdd")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn without_timing(mut v: Value) -> Value {
    v["stats"].as_object_mut().unwrap().remove("wall_time_ms");
    v
}

#[test]
fn bell_histogram_has_only_correlated_keys() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "bell.qc", "qubits 2\nh 0\ncx 0 1\nmeasure_all\n");
    let (code, out) = qdd(&["run", &file, "--seed", "7", "--shots", "1000"]);
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(&out).unwrap();
    let hist = report["histogram"].as_object().unwrap();
    assert!(hist.keys().all(|k| k == "00" || k == "11"));
    let total: u64 = hist.values().map(|v| v.as_u64().unwrap()).sum();
    assert_eq!(total, 1000);
    assert_eq!(report["circuit"]["name"], "bell");
    assert_eq!(report["config"]["seed"], 7);
}

#[test]
fn empty_circuit_applies_no_gates() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "empty.qc", "qubits 1\n");
    let (code, out) = qdd(&["run", &file]);
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["stats"]["gates_applied"], 0);
    assert_eq!(report["histogram"]["0"], 1);
}

#[test]
fn report_has_the_fixed_fields() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "x.qc", "qubits 1\nx 0\n");
    let (_, out) = qdd(&["run", &file]);
    let report: Value = serde_json::from_str(&out).unwrap();
    let keys: Vec<&str> = report.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    assert_eq!(keys, ["circuit", "config", "histogram", "stats", "tool", "version"]);
    let mut stats: Vec<&str> = report["stats"].as_object().unwrap().keys().map(|k| k.as_str()).collect();
    stats.sort();
    assert_eq!(
        stats,
        ["gates_applied", "norm_deviation", "peak_unique_nodes", "peak_vector_nodes", "wall_time_ms"]
    );
}

#[test]
fn dumped_qft_state_matches_dft() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = qdd(&["gen", "qft", "8", "--input", "10010110"]);
    assert_eq!(code, 0);
    let file = write(dir.path(), "qft8.qc", &text);
    let (code, out) = qdd(&["run", &file, "--dump-state"]);
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(&out).unwrap();
    let state: Vec<Complex64> = report["state"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| Complex64::new(p[0].as_f64().unwrap(), p[1].as_f64().unwrap()))
        .collect();
    assert_eq!(state.len(), 256);
    let f = dense::dft_matrix(8).unwrap();
    let expected = dense::apply(&f, &dense::DenseVector::basis(8, 0b10010110).unwrap()).unwrap();
    assert!(expected.max_abs_diff(&state) < 1e-9);
}

#[test]
fn dump_state_is_skipped_for_wide_circuits() {
    let (code, out) = qdd(&["bench", "entangle", "21", "--dump-state"]);
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(&out).unwrap();
    assert!(report.get("state").is_none());
}

#[test]
fn parse_error_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "bad.qc", "qubits 2\ncx 0 5\n");
    let (code, out) = qdd(&["run", &file]);
    assert_eq!(code, 2);
    let report: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["error"]["kind"], "parse");
    assert_eq!(report["error"]["line"], 2);
    assert_eq!(report["error"]["column"], 6);
}

#[test]
fn missing_file_exits_with_one() {
    let (code, out) = qdd(&["run", "/nonexistent/circuit.qc"]);
    assert_eq!(code, 1);
    let report: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["error"]["kind"], "io");
}

#[test]
fn identical_invocations_match() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "ghz.qc", "qubits 3\nh 0\ncx 0 1\nh 2\nt 2\nh 2\ncx 1 2\nmeasure_all\n");
    let args = ["run", file.as_str(), "--seed", "42", "--shots", "300"];
    let (_, a) = qdd(&args);
    let (_, b) = qdd(&args);
    let a: Value = serde_json::from_str(&a).unwrap();
    let b: Value = serde_json::from_str(&b).unwrap();
    assert_eq!(without_timing(a), without_timing(b));
}

#[test]
fn stats_json_copy_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("stats.json");
    let (code, out) = qdd(&["bench", "grover", "3", "--marked", "101", "--stats-json", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let saved = std::fs::read_to_string(&path).unwrap();
    assert_eq!(saved.trim_end(), out.trim_end());
    let report: Value = serde_json::from_str(&saved).unwrap();
    assert_eq!(report["circuit"]["name"], "grover_3");
}

#[test]
fn gc_threshold_does_not_change_the_histogram() {
    let a: Value = serde_json::from_str(&qdd(&["bench", "qft", "6", "--shots", "50", "--seed", "3"]).1).unwrap();
    let b: Value =
        serde_json::from_str(&qdd(&["bench", "qft", "6", "--shots", "50", "--seed", "3", "--gc-threshold", "0"]).1)
            .unwrap();
    assert_eq!(a["histogram"], b["histogram"]);
}

#[test]
fn bad_marked_width_is_rejected() {
    let (code, out) = qdd(&["bench", "grover", "3", "--marked", "10"]);
    assert_eq!(code, 1);
    let report: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["error"]["kind"], "usage");
}

#[test]
fn dot_renders_state_and_gate() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "bell.qc", "qubits 2\nh 0\ncx 0 1\nmeasure 0\n");
    let (code, state) = qdd(&["dot", &file, "--state"]);
    assert_eq!(code, 0);
    assert!(state.starts_with("digraph vector {"));
    let (code, gate) = qdd(&["dot", &file, "--gate", "1"]);
    assert_eq!(code, 0);
    assert!(gate.starts_with("digraph matrix {"));
    assert!(gate.contains("11: "));
    let (code, _) = qdd(&["dot", &file, "--gate", "2"]);
    assert_eq!(code, 1);
}

#[test]
fn generated_circuits_parse_back() {
    for family in ["entangle", "qft", "grover"] {
        let (code, text) = qdd(&["gen", family, "4"]);
        assert_eq!(code, 0);
        let c = qdd::circuit::parse(family, &text).unwrap();
        assert_eq!(c.qubits(), 4);
    }
}
