//! Binary-level round-trips: subcommands, output files, exit codes, and
//! byte-level determinism of reports.

mod common;

use std::process::Command;

use common::fixture;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_conley-morse"))
}

#[test]
fn analyze_writes_report_and_dot() {
    let dir = std::env::temp_dir().join("conley-morse-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let report_path = dir.join("report.json");
    let dot_path = dir.join("morse.dot");
    let out = bin()
        .args([
            "analyze",
            fixture("fix_r.json").to_str().unwrap(),
            "--out",
            report_path.to_str().unwrap(),
            "--dot",
            dot_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["poincare"]["S"], serde_json::json!([1]));
    assert_eq!(report["poincare"]["M"], serde_json::json!([[1], [1], [0, 1]]));
    assert_eq!(report["Q"], serde_json::json!([1]));
    let dot = std::fs::read_to_string(&dot_path).unwrap();
    assert!(dot.contains("M3 -> M1") && dot.contains("M3 -> M2"));
    assert!(dot.contains("M3: t"));
}

#[test]
fn analyze_is_deterministic() {
    let run = || {
        let out = bin()
            .args(["analyze", fixture("fix_p.json").to_str().unwrap()])
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(run(), run(), "reports must be byte-identical across runs");
}

#[test]
fn analyze_with_explicit_neighborhood() {
    let dir = std::env::temp_dir().join("conley-morse-cli-nbhd");
    std::fs::create_dir_all(&dir).unwrap();
    let ids = dir.join("ids.json");
    std::fs::write(&ids, "[1,2,3]").unwrap();
    let out = bin()
        .args([
            "analyze",
            fixture("fix_r.json").to_str().unwrap(),
            "--neighborhood",
            ids.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["morse_sets"], serde_json::json!([[2]]));
    assert_eq!(report["poincare"]["S"], serde_json::json!([0, 1]));
}

#[test]
fn check_pair_accepts_the_canonical_pair() {
    let out = bin()
        .args([
            "check-pair",
            fixture("fix_r.json").to_str().unwrap(),
            fixture("fix_r_pair.json").to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let verdict: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(verdict["certified"], serde_json::json!(true));
}

#[test]
fn check_pair_rejects_a_broken_pair() {
    let dir = std::env::temp_dir().join("conley-morse-cli-pair");
    std::fs::create_dir_all(&dir).unwrap();
    let pair = dir.join("bad_pair.json");
    std::fs::write(&pair, r#"{"p1":[1,2,3],"p2":[],"ambient":[1,2,3]}"#).unwrap();
    let out = bin()
        .args([
            "check-pair",
            fixture("fix_r.json").to_str().unwrap(),
            pair.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert_eq!(out.status.code(), Some(4));
    let diag: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(diag["error"], serde_json::json!("ResolutionTooCoarse"));
}

#[test]
fn homology_subcommand_reports_dims() {
    let out = bin()
        .args([
            "homology",
            fixture("fix_r.json").to_str().unwrap(),
            fixture("fix_r_pair.json").to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let dims: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(dims["dims"], serde_json::json!([0, 1]));
}

#[test]
fn morse_graph_subcommand_emits_dot() {
    let out = bin()
        .args(["morse-graph", fixture("fix_p.json").to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph morse {"));
    assert!(dot.contains("M3 -> M2") && dot.contains("M2 -> M1"));
    assert!(!dot.contains("M3 -> M1"), "transitive reduction drops the composite edge");
}

#[test]
fn malformed_input_gets_ingestion_exit_code() {
    let dir = std::env::temp_dir().join("conley-morse-cli-bad");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = bin().args(["analyze", bad.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty(), "no partial output on ingestion failure");
}

#[test]
fn samples_ingestion_runs_end_to_end() {
    // a sampled contraction: single attracting Morse set, index 1
    let dir = std::env::temp_dir().join("conley-morse-cli-samples");
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::copy(fixture("contraction_pairs.csv"), dir.join("contraction_pairs.csv")).unwrap();
    let spec = dir.join("sampled.json");
    std::fs::write(
        &spec,
        r#"{"grid":{"dim":1,"bounds":[[0.0,5.0]],"divisions":[10]},
           "map":{"kind":"samples","file":"contraction_pairs.csv","pad":1}}"#,
    )
    .unwrap();
    let out = bin().args(["analyze", spec.to_str().unwrap()]).output().unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["poincare"]["S"], serde_json::json!([1]));
    assert_eq!(report["map_kind"], serde_json::json!("samples"));
}
