//! Golden reports. Set MACDONALD_BLESS=1 to rewrite them from the current
//! build; the config of each run is read back from its golden file.

use std::path::PathBuf;

use macdonald_core::harness::{compare_golden, golden_text, run_verification, RunConfig};

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn check(name: &str) {
    let path = golden_dir().join(name);
    let text = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let cfg = RunConfig::from_json(&v["config"].to_string()).unwrap();
    let report = run_verification(&cfg).unwrap();
    assert!(report.passed(), "{name} no longer passes");
    if std::env::var_os("MACDONALD_BLESS").is_some() {
        std::fs::write(&path, golden_text(&report).unwrap()).unwrap();
        return;
    }
    let diffs = compare_golden(&report, &path).unwrap();
    assert!(diffs.is_empty(), "{name}:\n{}", diffs.join("\n"));
}

#[test]
fn a1_self() {
    check("a1_self.json");
}

#[test]
fn a2_self() {
    check("a2_self.json");
}

#[test]
fn b2_dual() {
    check("b2_dual.json");
}

#[test]
fn g2_self() {
    check("g2_self.json");
}
