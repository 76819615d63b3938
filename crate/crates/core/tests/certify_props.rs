mod common;

use common::*;
use fibercert::alexander::ManifoldMeta;
use fibercert::certify::{certify, infer_norm, Budget, CertReport, Evidence, NormObservation, Verdict};
use fibercert::corpus::{load_corpus, run_corpus};
use fibercert::words::{mapping_torus, wirtinger, PhiClass, Presentation};

fn knot(name: &str) -> (Presentation, PhiClass, ManifoldMeta) {
    let (p, phi) = wirtinger(&load_pd(name)).unwrap();
    (p, phi, ManifoldMeta::knot_exterior(name))
}

fn witness_group(report: &CertReport) -> Option<&str> {
    match &report.verdict {
        Verdict::NotFibered { witness, .. } => Some(&witness.group),
        _ => None,
    }
}

#[test]
fn larger_budgets_keep_the_witness() {
    for name in ["5_2", "6_1"] {
        let (p, phi, meta) = knot(name);
        let witnesses: Vec<Option<String>> = [1, 4, 12, 24]
            .into_iter()
            .map(|n| certify(&p, &phi, &meta, &Budget::new(n, vec![2, 3]).unwrap()).unwrap())
            .map(|r| witness_group(&r).map(str::to_string))
            .collect();
        assert!(witnesses.iter().all(|w| w.is_some() && *w == witnesses[0]), "{name}: {witnesses:?}");
    }
}

#[test]
fn random_mapping_tori_are_never_refuted_at_order_24() {
    let budget = Budget::new(24, vec![2, 3, 5]).unwrap();
    for (i, h) in random_automorphisms(991, 12, 2, 6).iter().enumerate() {
        let (p, phi) = mapping_torus(h).unwrap();
        let meta = ManifoldMeta::free_mapping_torus(format!("torus-{i}"));
        let report = certify(&p, &phi, &meta, &budget).unwrap();
        assert!(matches!(report.verdict, Verdict::ConsistentUpTo { .. }), "{:?}: {}", h.images(), report.verdict.kind());
        assert_eq!(report.inferred_norm, Some(h.rank() as u64 - 1));
    }
}

#[test]
fn bundled_mapping_torus_file() {
    let text = std::fs::read_to_string(data_path("torus.pres")).unwrap();
    let (p, phi) = Presentation::parse(&text).unwrap();
    let report = certify(&p, &phi, &ManifoldMeta::free_mapping_torus(p.label()), &Budget::default()).unwrap();
    assert_eq!(report.verdict.exit_code(), 0);
    assert_eq!(report.inferred_norm, Some(1));
}

#[test]
fn each_passing_entry_alone_gives_the_same_norm() {
    let (p, phi, meta) = knot("4_1");
    let report = certify(&p, &phi, &meta, &Budget::new(12, vec![]).unwrap()).unwrap();
    for v in &report.ledger {
        let obs: Option<NormObservation> = v.into();
        assert_eq!(infer_norm(&[obs.unwrap()], 0), Ok(report.inferred_norm));
    }
}

#[test]
fn corpus_norms_never_exceed_the_genus_bound() {
    let entries = load_corpus(&data_path("corpus.json")).unwrap();
    let summary = run_corpus(&entries, &Budget::default()).unwrap();
    for (entry, row) in entries.iter().zip(&summary.rows) {
        let (Some(known), Some(x)) = (entry.known_norm(), row.norm) else { continue };
        assert!(x <= known, "{}", entry.name);
        if entry.known_fibered == Some(true) {
            assert_eq!(x, known, "{}", entry.name);
        }
    }
    assert!(!summary.soundness_violation);
}

#[test]
fn verdicts_on_the_bundled_corpus() {
    let entries = load_corpus(&data_path("corpus.json")).unwrap();
    let summary = run_corpus(&entries, &Budget::default()).unwrap();
    let verdicts: Vec<&str> = summary.rows.iter().map(|r| r.verdict.as_str()).collect();
    assert_eq!(verdicts, ["n/a", "ConsistentUpTo", "ConsistentUpTo", "NotFibered", "NotFibered"]);
}

#[test]
fn reports_round_trip_through_json() {
    for name in ["3_1", "5_2"] {
        let (p, phi, meta) = knot(name);
        let report = certify(&p, &phi, &meta, &Budget::new(8, vec![2, 5]).unwrap()).unwrap();
        assert_eq!(CertReport::from_json(&report.to_json()).unwrap(), report);
    }
}

/// Same group with one relator repeated: deficiency drops to 0, so only the
/// `𝔽_p` route runs.
fn padded(name: &str) -> (Presentation, PhiClass, ManifoldMeta) {
    let (p, phi, meta) = knot(name);
    let mut rels = p.relators().to_vec();
    rels.push(rels[0].clone());
    (Presentation::new(p.num_generators(), rels, name).unwrap(), phi, meta)
}

#[test]
fn fp_only_evidence_passes_for_a_fibered_knot() {
    let (p, phi, meta) = padded("3_1");
    let report = certify(&p, &phi, &meta, &Budget::new(6, vec![2, 3, 5]).unwrap()).unwrap();
    assert!(matches!(report.verdict, Verdict::ConsistentUpTo { .. }));
    assert!(report.ledger.iter().all(|v| v.evidence == Evidence::FpOnly));
    assert_eq!(report.inferred_norm, Some(1));
}

#[test]
fn fp_only_failure_is_degenerate_not_a_certificate() {
    // 2t² − 3t + 2 loses its top degree mod 2.
    let (p, phi, meta) = padded("5_2");
    let report = certify(&p, &phi, &meta, &Budget::new(6, vec![2, 3]).unwrap()).unwrap();
    assert!(matches!(report.verdict, Verdict::Degenerate { .. }), "{:?}", report.verdict);
    assert_eq!(report.verdict.exit_code(), 4);
}
