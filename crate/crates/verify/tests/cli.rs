use std::process::Command;

use verify::{run_suite, Options, Report, Suite};

fn verify() -> Command {
    Command::new(env!("CARGO_BIN_EXE_verify"))
}

fn schema() -> serde_json::Value {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/report.schema.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

#[test]
fn covolume_suite_passes() {
    let out = verify().arg("covolume").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS  covolume.GL"));
    assert!(text.contains("2/2 checks pass"));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let out = verify().arg("no-such-suite").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn lattice_counts_fail_only_on_norm_six() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("counts.json");
    let status = verify().args(["lattice-counts", "--json", "--out"]).arg(&path).status().unwrap();
    assert_eq!(status.code(), Some(1));
    let report: Report = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let failed: Vec<(&str, &str)> = report.failures().map(|c| (c.claim_id.as_str(), c.computed.as_str())).collect();
    assert_eq!(failed, vec![("L.norm6.count", "280")]);
    assert_eq!(report.checks.len(), 11);
}

#[test]
fn json_reports_are_valid_and_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let validator = jsonschema::validator_for(&schema()).unwrap();
    let mut texts = Vec::new();
    for k in 0..2 {
        let path = dir.path().join(format!("r{k}.json"));
        verify().args(["elimination", "--json", "--out"]).arg(&path).status().unwrap();
        texts.push(std::fs::read_to_string(&path).unwrap());
    }
    assert_eq!(texts[0], texts[1]);
    let v: serde_json::Value = serde_json::from_str(&texts[0]).unwrap();
    assert!(validator.is_valid(&v));

    let out = verify().args(["covolume", "--json", "--timing"]).output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["wall_time"].is_number());
    assert!(validator.is_valid(&v));
}

#[test]
fn exit_status_matches_report() {
    for suite in Suite::EACH {
        let report = run_suite(suite, &Options::default()).unwrap();
        let code = verify().arg(suite.name()).output().unwrap().status.code();
        assert_eq!(code, Some(if report.all_pass() { 0 } else { 1 }), "{suite}");
        assert!(report.checks.iter().all(|c| c.pass == (c.expected == c.computed)));
    }
}

#[test]
fn quotient_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("gm.dot");
    assert!(verify().args(["graph", "--group", "gm", "--format", "dot", "--out"]).arg(&dot).status().unwrap().success());
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("graph GM {"));
    assert!(text.contains("n0 -- n0 [label=\"14\"]"));

    let out = verify().args(["graph", "--group", "gl", "--format", "json"]).output().unwrap();
    assert!(out.status.success());
    let g: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(g["nodes"].as_array().unwrap().len(), 2);

    let out = verify().args(["graph", "--group", "gm", "--radius", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn small_radius_is_rejected_for_building_suites() {
    let out = verify().args(["building-gm", "--radius", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
