//! End-to-end tests of the installed binary: exit codes, output formats,
//! file side effects, and determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qualprod::classify::ClassificationReport;
use qualprod::witness::{recheck, WitnessCertificate};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qualprod"));
    cmd.env_remove("QUALPROD_MINOR_CAP");
    cmd
}

fn write_doc(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn pattern_doc(rows: usize, cols: usize, entries: &str) -> String {
    format!(
        r#"{{ "version": 1, "kind": "sign-pattern", "rows": {rows}, "cols": {cols}, "entries": {entries} }}"#
    )
}

fn matrix_doc(rows: usize, cols: usize, entries: &str) -> String {
    format!(
        r#"{{ "version": 1, "kind": "exact-matrix", "rows": {rows}, "cols": {cols}, "entries": {entries} }}"#
    )
}

fn stdout_of(out: &Output) -> String {
    assert!(
        out.status.success(),
        "expected success, got {:?}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn classify_text_covers_the_ladder() {
    let dir = tempfile::tempdir().unwrap();
    let identity = write_doc(dir.path(), "id.json", &pattern_doc(2, 2, "[[1,0],[0,1]]"));
    let out = bin().arg("classify").arg(&identity).output().unwrap();
    let text = stdout_of(&out);
    assert!(text.contains("level: CATERPILLAR"));
    assert_eq!(text.matches("HOLDS").count(), 7);
    assert_eq!(text.matches("FAILS").count(), 0);

    let tree = write_doc(
        dir.path(),
        "tree.json",
        &pattern_doc(4, 3, "[[1,0,0],[1,1,1],[0,1,0],[0,0,1]]"),
    );
    let out = bin().arg("classify").arg(&tree).output().unwrap();
    let text = stdout_of(&out);
    assert!(text.contains("level: FOREST"));
    assert!(text.contains("P0_4   HOLDS"));
    assert!(text.contains("P0_6   FAILS"));
    assert!(text.contains("three-legged subtree"));
}

#[test]
fn classify_json_is_a_strict_report_and_dot_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_doc(dir.path(), "p.json", &pattern_doc(2, 2, "[[1,-1],[1,1]]"));
    let dot_path = dir.path().join("graph.dot");
    let out = bin()
        .arg("classify")
        .arg(&input)
        .arg("--json")
        .arg("--dot")
        .arg(&dot_path)
        .output()
        .unwrap();
    let report: ClassificationReport = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(report.level.to_string(), "TWO_ODD");
    assert!(report.conclusions.p0_2 && !report.conclusions.ps_2);
    let dot = std::fs::read_to_string(&dot_path).unwrap();
    assert!(dot.starts_with("graph pattern {"));
    assert!(dot.contains("style=dashed"));
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_doc(dir.path(), "bad.json", "{ not json");
    let out = bin().arg("classify").arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));

    let missing = dir.path().join("missing.json");
    let out = bin().arg("classify").arg(&missing).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let wrong_kind = write_doc(dir.path(), "m.json", &matrix_doc(1, 1, r#"[["1"]]"#));
    let out = bin().arg("classify").arg(&wrong_kind).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn witness_emits_a_recheckable_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_doc(dir.path(), "ones.json", &pattern_doc(2, 2, "[[1,1],[1,1]]"));
    let out = bin().arg("witness").arg(&input).arg("--target").arg("PS_2").output().unwrap();
    let cert: WitnessCertificate = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(cert.statement.as_str(), "PS_2");
    assert_eq!(cert.k, 1);
    recheck(&cert).unwrap();
}

#[test]
fn witness_strict_flag_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_doc(
        dir.path(),
        "tree.json",
        &pattern_doc(4, 3, "[[1,0,0],[1,1,1],[0,1,0],[0,0,1]]"),
    );
    let cert_path = dir.path().join("cert.json");
    let out = bin()
        .arg("witness")
        .arg(&input)
        .arg("--target")
        .arg("PS_4")
        .arg("--strict")
        .arg("--out")
        .arg(&cert_path)
        .output()
        .unwrap();
    assert!(stdout_of(&out).is_empty(), "--out diverts the certificate");
    let cert: WitnessCertificate =
        serde_json::from_str(&std::fs::read_to_string(&cert_path).unwrap()).unwrap();
    assert!(cert.is_strict(), "--strict fills every pattern entry");
    recheck(&cert).unwrap();
}

#[test]
fn witness_for_a_holding_statement_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_doc(dir.path(), "id.json", &pattern_doc(2, 2, "[[1,0],[0,1]]"));
    let out = bin().arg("witness").arg(&input).arg("--target").arg("P0_2").output().unwrap();
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("holds"));
}

#[test]
fn verify_is_deterministic_and_finds_seeded_failures() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_doc(dir.path(), "ones.json", &pattern_doc(2, 2, "[[1,1],[1,1]]"));
    let run = || {
        let out = bin()
            .arg("verify")
            .arg(&input)
            .arg("--k")
            .arg("1")
            .arg("--samples")
            .arg("100")
            .arg("--seed")
            .arg("31")
            .output()
            .unwrap();
        stdout_of(&out)
    };
    let first = run();
    assert_eq!(first, run(), "same seed, byte-identical report");
    let report: serde_json::Value = serde_json::from_str(&first).unwrap();
    let p02 = &report["outcomes"]["P0_2"];
    assert!(p02["fails"].as_u64().unwrap() > 0, "all-ones fails P0_2 in 100 samples");
    assert!(p02["firstCounterexample"]["factors"].is_array(), "factors recorded");
    assert!(p02["counterexampleSeed"].is_u64(), "seed recorded");
}

#[test]
fn verify_caterpillar_is_clean() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_doc(dir.path(), "cat.json", &pattern_doc(2, 3, "[[1,-1,0],[0,1,1]]"));
    let out = bin()
        .arg("verify")
        .arg(&input)
        .arg("--k")
        .arg("1,2,3")
        .arg("--samples")
        .arg("25")
        .arg("--seed")
        .arg("2")
        .output()
        .unwrap();
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    for (name, tally) in report["outcomes"].as_object().unwrap() {
        assert_eq!(tally["fails"].as_u64(), Some(0), "{name} on a caterpillar");
    }
    assert_eq!(report["kelloggFlags"]["interiorHits"].as_u64(), Some(0));
}

#[test]
fn minor_cap_env_is_honored_and_validated() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_doc(dir.path(), "p.json", &pattern_doc(2, 2, "[[1,-1],[1,1]]"));
    let out = bin()
        .arg("verify")
        .arg(&input)
        .arg("--k")
        .arg("1")
        .arg("--samples")
        .arg("5")
        .env("QUALPROD_MINOR_CAP", "1")
        .output()
        .unwrap();
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(report["skippedExact"].as_u64(), Some(5), "2x2 products exceed cap 1");
    assert!(report["outcomes"].as_object().unwrap().is_empty());

    let out = bin()
        .arg("verify")
        .arg(&input)
        .env("QUALPROD_MINOR_CAP", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "bad cap value is an input error");
}

#[test]
fn factor_round_trip_and_obstruction() {
    let dir = tempfile::tempdir().unwrap();
    let reference =
        write_doc(dir.path(), "a.json", &matrix_doc(2, 2, r#"[["1","0"],["2","3"]]"#));
    let target =
        write_doc(dir.path(), "b.json", &matrix_doc(2, 2, r#"[["5","0"],["1","1/2"]]"#));
    let out = bin().arg("factor").arg(&reference).arg(&target).output().unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let scaling = v.get("scaling").expect("forest patterns always factor");
    assert_eq!(scaling["d"].as_array().unwrap().len(), 2);

    let ones = write_doc(dir.path(), "o.json", &matrix_doc(2, 2, r#"[["1","1"],["1","1"]]"#));
    let skew = write_doc(dir.path(), "s.json", &matrix_doc(2, 2, r#"[["1","1"],["1","2"]]"#));
    let out = bin().arg("factor").arg(&ones).arg(&skew).output().unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let obs = v.get("obstruction").expect("inconsistent square instance");
    assert_eq!(obs["lhs"], "2");
    assert_eq!(obs["rhs"], "1");

    let flipped =
        write_doc(dir.path(), "f.json", &matrix_doc(2, 2, r#"[["1","-1"],["1","2"]]"#));
    let out = bin().arg("factor").arg(&ones).arg(&flipped).output().unwrap();
    assert_eq!(out.status.code(), Some(2), "sign mismatch is an input error");
}

#[test]
fn graph_exports_bipartite_and_digraph_dot() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_doc(dir.path(), "p.json", &pattern_doc(2, 2, "[[1,1],[1,1]]"));
    let bip = dir.path().join("bip.dot");
    let dig = dir.path().join("dig.dot");
    let out = bin()
        .arg("graph")
        .arg(&input)
        .arg("--dot")
        .arg(&bip)
        .arg("--digraph")
        .arg("2")
        .arg("--digraph-dot")
        .arg(&dig)
        .output()
        .unwrap();
    assert!(stdout_of(&out).is_empty());
    let bip_text = std::fs::read_to_string(&bip).unwrap();
    assert_eq!(bip_text.matches(" -- ").count(), 4);
    let dig_text = std::fs::read_to_string(&dig).unwrap();
    // 2k = 4 blocks of 2 vertices each: 8 digraph nodes.
    assert_eq!(dig_text.matches("rank=same").count(), 4);
    for b in 0..4 {
        for i in 0..2 {
            assert!(dig_text.contains(&format!("B{b}_{i}")));
        }
    }

    // All-zero pattern: vertices only, no edges.
    let zeros = write_doc(dir.path(), "z.json", &pattern_doc(2, 2, "[[0,0],[0,0]]"));
    let out = bin().arg("graph").arg(&zeros).output().unwrap();
    let text = stdout_of(&out);
    assert!(!text.contains(" -- "));
    assert!(text.contains("X1 [shape=box]"));
}
