use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_hermsym");

const KIRCHHOFF: &str = r#"{"n": 2, "boundary": {"preset": "kirchhoff"},
  "potentials": {"all": {"kind": "zero"}},
  "kgrid": {"k_min": 0.5, "k_max": 5, "count": 4}}"#;

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn hermsym(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn presets_lists_every_condition() {
    let out = hermsym(&["presets", "--n", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["dirichlet", "neumann", "kirchhoff", "delta", "mixed"] {
        assert!(text.contains(name), "{name} missing from\n{text}");
    }
}

#[test]
fn presets_rejects_empty_graph() {
    let out = hermsym(&["presets", "--n", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn check_echoes_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", KIRCHHOFF);
    let out = hermsym(&["check", "--config", s(&cfg)]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("config ok"));
    assert!(text.contains("\"unitarity_tol\": 1e-7"), "{text}");
}

#[test]
fn check_reports_parse_position() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", "{\"n\": 2,\n  \"boundary\": }");
    let out = hermsym(&["check", "--config", s(&cfg)]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn missing_config_is_a_config_error() {
    let out = hermsym(&["run", "--config", "/nonexistent/hermsym.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn json_output_and_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", KIRCHHOFF);
    let out_path = dir.path().join("r.json");
    let out = hermsym(&[
        "run",
        "--config",
        s(&cfg),
        "--out",
        s(&out_path),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&std::fs::read(&out_path).unwrap()).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for r in rows {
        assert_eq!(r["status"], "ok");
        // Kirchhoff with two edges is the swap
        assert!(r["s_00_re"].as_f64().unwrap().abs() < 1e-12);
        assert!((r["s_01_re"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    }
    let report = std::fs::read_to_string(dir.path().join("r.json.report.txt")).unwrap();
    assert!(report.contains("max unitarity defect"));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("hermsym run report"));
}

#[test]
fn csv_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", KIRCHHOFF);
    let out = hermsym(&["run", "--quiet", "--config", s(&cfg)]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("k,s_00_re,s_00_im"));
    assert_eq!(lines.count(), 4);
    assert!(out.stderr.is_empty());
}

#[test]
fn impossible_tolerance_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let text = KIRCHHOFF.replace(
        "\"count\": 4}",
        "\"count\": 4}, \"checks\": {\"unitarity_tol\": 1e-300}",
    );
    let cfg = write(dir.path(), "c.json", &text);
    let out = hermsym(&[
        "run",
        "--quiet",
        "--config",
        s(&cfg),
        "--out",
        s(&dir.path().join("o.csv")),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stderr).unwrap().contains("worst k"));
}

#[test]
fn unknown_field_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "c.json",
        &KIRCHHOFF.replace("\"n\": 2", "\"n\": 2, \"edges\": 3"),
    );
    let out = hermsym(&["run", "--config", s(&cfg)]);
    assert_eq!(out.status.code(), Some(1));
}
