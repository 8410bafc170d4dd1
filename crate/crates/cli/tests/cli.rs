use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn g2kit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2kit")).args(args).output().expect("spawn g2kit")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn paper_config() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/paper.json")
}

fn paper_value() -> Value {
    serde_json::from_str(&std::fs::read_to_string(paper_config()).unwrap()).unwrap()
}

fn write_config(dir: &Path, v: &Value) -> String {
    let path = dir.join("config.json");
    std::fs::write(&path, v.to_string()).unwrap();
    path.display().to_string()
}

#[test]
fn betti_numbers_of_both_spaces() {
    let out = g2kit(&["betti", "--preset", "paper"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("(1, 0, 1, 6, 6, 1, 0, 1)"), "{text}");
    assert!(text.contains("(1, 0, 11, 16, 16, 11, 0, 1)"), "{text}");
}

#[test]
fn massey_certifies_non_formality() {
    let out = g2kit(&["massey"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).starts_with("NON-FORMAL: certificate follows"));
}

#[test]
fn zero_drift_gives_vanishing_product() {
    let out = g2kit(&["massey", "--preset", "paper-zero-drift"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).starts_with("Massey product vanishes"), "{}", stdout(&out));
}

#[test]
fn config_file_matches_preset() {
    let config = paper_config();
    let config = config.to_str().unwrap();
    let from_file = g2kit(&["report", "--config", config, "--format", "json"]);
    let from_preset = g2kit(&["report", "--preset", "paper", "--format", "json"]);
    assert!(from_file.status.success(), "{}", stderr(&from_file));
    assert_eq!(from_file.stdout, from_preset.stdout);
}

#[test]
fn json_is_deterministic_and_complete() {
    let a = g2kit(&["report", "--format", "json"]);
    let b = g2kit(&["report", "--format", "json"]);
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    for key in ["group", "strata", "betti", "cohomology", "poincare_duals", "massey", "verdict"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["strata"].as_array().unwrap().len(), 10);
}

#[test]
fn subcommands_select_sections() {
    let v: Value = serde_json::from_slice(&g2kit(&["closure", "--format", "json"]).stdout).unwrap();
    assert!(v.get("group").is_some());
    assert!(v.get("strata").is_none());
    let v: Value = serde_json::from_slice(&g2kit(&["pd", "--format", "json"]).stdout).unwrap();
    assert!(v.get("poincare_duals").is_some());
    assert!(v.get("massey").is_none());
}

#[test]
fn pd_lists_every_stratum() {
    let out = g2kit(&["pd"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    for i in 1..=10 {
        assert!(text.contains(&format!("PD[N{i}] =")), "{text}");
    }
}

#[test]
fn cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let plain = g2kit(&["report", "--format", "json"]);
    let cold = g2kit(&["report", "--format", "json", "--cache", cache]);
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let warm = g2kit(&["report", "--format", "json", "--cache", cache]);
    assert!(cold.status.success() && warm.status.success());
    assert_eq!(plain.stdout, cold.stdout);
    assert_eq!(plain.stdout, warm.stdout);
}

#[test]
fn cache_keys_follow_the_config() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    assert!(g2kit(&["strata", "--cache", cache]).status.success());
    assert!(g2kit(&["strata", "--preset", "paper-no-cobordism", "--cache", cache]).status.success());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn unknown_preset_is_a_config_error() {
    let out = g2kit(&["betti", "--preset", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown preset"));
}

#[test]
fn missing_lattice_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let mut v = paper_value();
    v.as_object_mut().unwrap().remove("lattice");
    let out = g2kit(&["betti", "--config", &write_config(dir.path(), &v)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("lattice"), "{}", stderr(&out));
}

#[test]
fn non_isometry_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let mut v = paper_value();
    v["generators"][1]["linear"][1][1] = Value::from("2");
    let out = g2kit(&["closure", "--config", &write_config(dir.path(), &v)]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("generators[1]") && err.contains("NotOrthogonal"), "{err}");
}

#[test]
fn unreadable_config_is_a_config_error() {
    let out = g2kit(&["betti", "--config", "/nonexistent/config.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn nonzero_product_is_not_well_defined() {
    let dir = tempfile::tempdir().unwrap();
    let mut v = paper_value();
    v["massey"]["b"] = serde_json::json!({"N1": "1"});
    let out = g2kit(&["massey", "--config", &write_config(dir.path(), &v)]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
}
