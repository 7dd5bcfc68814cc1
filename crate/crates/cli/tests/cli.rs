use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const SPACE: &str = r#"{ "labels": ["x", "y", "z"], "generator": "standard", "dist": [[0, 1, 3], [1, 0, 2], [3, 2, 0]] }"#;

fn fprok(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fprok")).args(args).current_dir(dir).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    let put = |name: &str, body: &str| fs::write(dir.path().join(name), body).unwrap();
    put("space.json", SPACE);
    put("mu.json", r#"{ "space": "space.json", "weights": { "x": 0.5, "z": 0.5 } }"#);
    put("nu.json", r#"{ "weights": { "y": 0.75, "z": 0.25 } }"#);
    put("ambient.txt", "x\ny\nz\n\n# added point\nw\n");
    dir
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

#[test]
fn metric_of_a_measure_with_itself_is_one() {
    let dir = fixture();
    for method in ["flow", "brute"] {
        let out = fprok(&["metric", "space.json", "mu.json", "mu.json", "--t", "0.7", "--method", method], dir.path());
        assert!(out.status.success());
        let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(json["value"], 1.0);
        assert_eq!(json["method"], method);
    }
}

#[test]
fn brute_and_flow_agree() {
    let dir = fixture();
    for t in ["0.1", "1", "2.5", "40"] {
        let value = |method| {
            let out = fprok(&["metric", "space.json", "mu.json", "nu.json", "--t", t, "--method", method], dir.path());
            assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
            let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
            json["value"].as_f64().unwrap()
        };
        assert!((value("flow") - value("brute")).abs() < 1e-12, "t = {t}");
    }
}

#[test]
fn brute_reports_a_witness_by_label() {
    let dir = fixture();
    let out = fprok(&["metric", "space.json", "mu.json", "nu.json", "--t", "1", "--method", "brute"], dir.path());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let witness = json["witness"].as_array().unwrap();
    assert!(!witness.is_empty());
    assert!(witness.iter().all(|l| ["x", "y", "z"].contains(&l.as_str().unwrap())));
}

#[test]
fn validate_names_the_asymmetric_pair() {
    let dir = fixture();
    fs::write(path(&dir, "bad.json"), r#"{ "labels": ["a", "b"], "generator": "standard", "dist": [[0, 1], [2, 0]] }"#)
        .unwrap();
    let out = fprok(&["validate", "bad.json"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("asymmetric") && err.contains("(a,b)"), "{err}");

    let ok = fprok(&["validate", "space.json"], dir.path());
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn validate_reports_table_violations() {
    let dir = fixture();
    // M(x,z) far above what the triangle inequality allows given the other pairs.
    let table = r#"{ "labels": ["x", "y", "z"], "generator": "table", "t_grid": [1, 2],
        "values": { "0,1": [0.1, 0.2], "1,2": [0.9, 0.95], "0,2": [0.1, 0.05] } }"#;
    fs::write(path(&dir, "table.json"), table).unwrap();
    let out = fprok(&["validate", "table.json"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("invalid"));
}

#[test]
fn usage_errors_exit_two() {
    let dir = fixture();
    assert_eq!(fprok(&["metric", "space.json", "mu.json"], dir.path()).status.code(), Some(2));
    assert_eq!(fprok(&["frobnicate"], dir.path()).status.code(), Some(2));
    let out = fprok(&["metric", "space.json", "mu.json", "nu.json", "--t", "1", "--method", "simplex"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn runtime_errors_name_the_field() {
    let dir = fixture();
    let out = fprok(&["metric", "space.json", "mu.json", "nu.json", "--t=-1"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--t"));

    fs::write(path(&dir, "stray.json"), r#"{ "weights": { "q": 1.0 } }"#).unwrap();
    let out = fprok(&["metric", "space.json", "stray.json", "nu.json", "--t", "1"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`q`"));

    let out = fprok(&["metric", "missing.json", "mu.json", "nu.json", "--t", "1"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing.json"));
}

#[test]
fn measure_on_another_space_is_rejected() {
    let dir = fixture();
    fs::write(path(&dir, "other.json"), r#"{ "labels": ["x", "y", "z"], "generator": "exponential", "dist": [[0, 1, 3], [1, 0, 2], [3, 2, 0]] }"#)
        .unwrap();
    let out = fprok(&["metric", "other.json", "mu.json", "nu.json", "--t", "1"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`space`"));
}

#[test]
fn curve_writes_csv() {
    let dir = fixture();
    let out = fprok(
        &["curve", "space.json", "mu.json", "nu.json", "--t-min", "0.5", "--t-max", "4", "--steps", "8", "--out", "c.csv"],
        dir.path(),
    );
    assert!(out.status.success());
    let csv = fs::read_to_string(path(&dir, "c.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "t,m_hat");
    assert_eq!(lines.len(), 9);
    assert!(lines[8].starts_with("4,"));
}

#[test]
fn extend_and_adjoin_produce_valid_spaces() {
    let dir = fixture();
    let out = fprok(
        &["extend", "space.json", "--ambient", "ambient.txt", "--t-grid", "log:0.1:10:9", "--out", "ext.json"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let ext: serde_json::Value = serde_json::from_str(&fs::read_to_string(path(&dir, "ext.json")).unwrap()).unwrap();
    assert_eq!(ext["labels"], serde_json::json!(["x", "y", "z", "w"]));
    assert_eq!(fprok(&["validate", "ext.json"], dir.path()).status.code(), Some(0));

    let out = fprok(&["adjoin", "space.json", "--t-grid", "0.5,1,2", "--out", "adj.json"], dir.path());
    assert!(out.status.success());
    let adj: serde_json::Value = serde_json::from_str(&fs::read_to_string(path(&dir, "adj.json")).unwrap()).unwrap();
    assert_eq!(adj["labels"][3], "⊥");
    assert_eq!(adj["values"]["0,3"], serde_json::json!([0.5, 0.5, 0.5]));
    assert_eq!(fprok(&["validate", "adj.json"], dir.path()).status.code(), Some(0));
}

#[test]
fn ambient_labels_as_json_array() {
    let dir = fixture();
    fs::write(path(&dir, "ambient.json"), r#"["w", "x", "y", "z"]"#).unwrap();
    let out = fprok(&["extend", "space.json", "--ambient", "ambient.json", "--out", "ext.json"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn seeded_commands_are_byte_identical() {
    let dir = fixture();
    for args in [
        &["converge", "space.json", "mu.json", "--schedule", "10,100,1000", "--t", "1", "--seed", "42"][..],
        &["psi-probe", "space.json", "--trials", "30", "--seed", "7", "--t", "1"][..],
    ] {
        let a = fprok(args, dir.path());
        let b = fprok(args, dir.path());
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
    let a = fprok(&["converge", "space.json", "mu.json", "--schedule", "10,100", "--t", "1", "--seed", "1"], dir.path());
    let text = stdout(&a);
    assert!(text.starts_with("n,gap,tv\n10,"));
    assert_eq!(text.lines().count(), 3);
}
