use std::path::PathBuf;
use std::process::{Command, Output};

use fibercert::certify::{CertReport, Verdict};
use fibercert::corpus::CorpusSummary;

fn data(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(rel).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fibercert")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn compute_trefoil_trivial_quotient() {
    let o = run(&["compute", &data("knots/3_1.pd"), "--group", "trivial"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Δ₁ = t^2 - t + 1 (monic, deg 2)"), "{}", stdout(&o));
}

#[test]
fn compute_trefoil_onto_s3_lists_each_surjection() {
    let o = run(&["compute", &data("knots/3_1.pd"), "--group", "S3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let entries: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    assert!(!entries.is_empty());
    assert!(entries.iter().all(|e| e["group"] == "S3" && e["route"] == "wada-Z"));
}

#[test]
fn malformed_pd_names_the_repeated_arc() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.pd");
    std::fs::write(&path, "[[1,5,2,4],[3,1,4,6],[5,3,6,5]]").unwrap();
    let o = run(&["compute", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("arc 5"), "{}", stderr(&o));
}

#[test]
fn presentation_parse_errors_carry_positions() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.pres");
    std::fs::write(&path, "gens: 2\nrel: ab?\n").unwrap();
    let o = run(&["compute", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
}

#[test]
fn certify_exit_codes_follow_the_verdict() {
    let o = run(&["certify", &data("knots/5_2.pd"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(3));
    let report = CertReport::from_json(&stdout(&o)).unwrap();
    let Verdict::NotFibered { witness, .. } = &report.verdict else { panic!("{:?}", report.verdict) };
    assert_eq!(witness.group, "Z1");

    let o = run(&["certify", &data("knots/3_1.pd"), "--max-order", "24", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let report = CertReport::from_json(&stdout(&o)).unwrap();
    assert_eq!(report.inferred_norm, Some(1));
    assert_eq!(report.schema, "fibercert-report/1");

    let o = run(&["certify", &data("torus.pres")]);
    assert_eq!(o.status.code(), Some(0));

    let o = run(&["certify", &data("knots/3_1.pd"), "--time-limit", "0"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn json_report_round_trips() {
    let o = run(&["certify", &data("knots/4_1.pd"), "--format", "json", "--jobs", "2"]);
    let text = stdout(&o);
    let report = CertReport::from_json(&text).unwrap();
    assert_eq!(report.to_json(), text.trim_end());
    let serial = run(&["certify", &data("knots/4_1.pd"), "--format", "json", "--jobs", "1"]);
    assert_eq!(serial.stdout, o.stdout);
}

#[test]
fn invalid_budgets_are_input_errors() {
    let path = data("knots/3_1.pd");
    for extra in [["--max-order", "65"], ["--primes", "4"], ["--norm", "-1"]] {
        let mut args = vec!["certify", path.as_str()];
        args.extend(extra);
        assert_eq!(run(&args).status.code(), Some(2), "{extra:?}");
    }
    assert_eq!(run(&["certify", &data("knots/0_1.pd")]).status.code(), Some(2));
}

#[test]
fn homs_lists_conjugacy_classes() {
    let o = run(&["homs", &data("knots/3_1.pd"), "--group", "S3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("1 homomorphism onto S3"), "{}", stdout(&o));
}

#[test]
fn bundled_corpus() {
    let o = run(&["corpus", &data("corpus.json"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let summary: CorpusSummary = serde_json::from_slice(&o.stdout).unwrap();
    let verdicts: Vec<&str> = summary.rows.iter().map(|r| r.verdict.as_str()).collect();
    assert_eq!(verdicts, ["n/a", "ConsistentUpTo", "ConsistentUpTo", "NotFibered", "NotFibered"]);
    let again = run(&["corpus", &data("corpus.json"), "--format", "json"]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn corpus_soundness_violation_and_empty_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"[{"name":"5_2","pd":[[1,5,2,4],[3,9,4,8],[5,1,6,10],[7,3,8,2],[9,7,10,6]],"known_fibered":true}]"#)
        .unwrap();
    let o = run(&["corpus", bad.to_str().unwrap()]);
    assert_ne!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("SOUNDNESS VIOLATION"));

    let empty = dir.path().join("empty.csv");
    std::fs::write(&empty, "name,pd,presentation,known_genus,known_fibered\n").unwrap();
    let o = run(&["corpus", empty.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let summary: CorpusSummary = serde_json::from_slice(&o.stdout).unwrap();
    assert!(summary.rows.is_empty());
}

#[test]
fn oracle_is_seeded() {
    let args = ["oracle", "--count", "6", "--seed", "3", "--max-order", "6", "--format", "json"];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, run(&args).stdout);
}
