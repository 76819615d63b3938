//! Batch certification of a list of knots or presentations, with each
//! verdict compared against known genus and fiberedness.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::alexander::{compute_delta_fp, compute_delta_z, ManifoldMeta, TwistedSetup};
use crate::certify::{certify, Budget, Verdict};
use crate::groups::Hom;
use crate::laurent::PrimeField;
use crate::words::{wirtinger, PdCode, PhiClass, Presentation};
use crate::{Error, Result};

pub const CORPUS_SCHEMA: &str = "fibercert-corpus/1";

/// One knot or manifold. Knots from PD codes are exteriors in `S³`; a
/// presentation is read in the `.pres` text format and taken as bounded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pd: Option<Vec<[u32; 4]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<String>,
    #[serde(default)]
    pub known_genus: Option<u32>,
    #[serde(default)]
    pub known_fibered: Option<bool>,
}

impl CorpusEntry {
    pub fn build(&self) -> Result<(Presentation, PhiClass, ManifoldMeta)> {
        let meta = ManifoldMeta::knot_exterior(self.name.clone());
        match (&self.pd, &self.presentation) {
            (Some(pd), None) => {
                let (mut pres, phi) = wirtinger(&PdCode::new(pd.clone())?)?;
                pres.set_label(self.name.clone());
                Ok((pres, phi, meta))
            }
            (None, Some(text)) => {
                let (mut pres, phi) = Presentation::parse(text)?;
                pres.set_label(self.name.clone());
                Ok((pres, phi, meta))
            }
            (Some(_), Some(_)) => {
                Err(Error::InvalidInput(format!("entry {}: give a PD code or a presentation, not both", self.name)))
            }
            (None, None) => Err(Error::InvalidInput(format!("entry {}: needs a PD code or a presentation", self.name))),
        }
    }

    /// `‖φ‖_T = 2g − 1` for a knot of genus `g ≥ 1`.
    pub fn known_norm(&self) -> Option<u64> {
        self.known_genus.filter(|&g| g >= 1).map(|g| 2 * g as u64 - 1)
    }
}

#[derive(Deserialize)]
struct CsvRow {
    name: String,
    #[serde(default)]
    pd: String,
    #[serde(default)]
    presentation: String,
    known_genus: Option<u32>,
    known_fibered: Option<bool>,
}

/// Reads a JSON array of entries, or CSV with columns
/// `name,pd,presentation,known_genus,known_fibered` where `pd` holds the JSON
/// crossing list.
pub fn load_corpus(path: &Path) -> Result<Vec<CorpusEntry>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
        parse_corpus_csv(&text)
    } else {
        parse_corpus_json(&text)
    }
}

pub fn parse_corpus_json(text: &str) -> Result<Vec<CorpusEntry>> {
    serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), column: e.column(), message: e.to_string() })
}

pub fn parse_corpus_csv(text: &str) -> Result<Vec<CorpusEntry>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let mut entries = Vec::new();
    for record in reader.deserialize::<CsvRow>() {
        let row = record.map_err(|e| {
            let (line, column) = e.position().map_or((0, 0), |p| (p.line() as usize, 1));
            Error::Parse { line, column, message: e.to_string() }
        })?;
        let pd = if row.pd.trim().is_empty() {
            None
        } else {
            Some(PdCode::from_json(&row.pd)?.crossings().to_vec())
        };
        let presentation = (!row.presentation.trim().is_empty()).then_some(row.presentation);
        entries.push(CorpusEntry {
            name: row.name,
            pd,
            presentation,
            known_genus: row.known_genus,
            known_fibered: row.known_fibered,
        });
    }
    Ok(entries)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusRow {
    pub name: String,
    /// Normalized `Δ₁` at the trivial quotient.
    pub delta1: Option<String>,
    /// A verdict kind, `n/a` for excluded manifolds, or `error`.
    pub verdict: String,
    pub witness_group: Option<String>,
    /// Norm the run checked against (inferred from the trivial quotient).
    pub norm: Option<u64>,
    /// `2g − 1` from the known genus.
    pub known_norm: Option<u64>,
    pub norm_agrees: Option<bool>,
    pub quotient_count: usize,
    pub soundness_violation: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub schema: String,
    pub budget: Budget,
    pub rows: Vec<CorpusRow>,
    pub soundness_violation: bool,
}

impl CorpusSummary {
    /// 5 when a known fibered entry was certified not fibered, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.soundness_violation {
            5
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }
}

fn trivial_delta1(pres: &Presentation, phi: &PhiClass, meta: &ManifoldMeta, primes: &[u32]) -> Result<String> {
    let setup = TwistedSetup::new(pres, phi, Hom::trivial(pres), meta)?;
    if pres.deficiency() == 1 {
        return Ok(compute_delta_z(&setup)?.delta1.to_string());
    }
    let p = *primes.first().ok_or_else(|| Error::InvalidInput("no prime configured".into()))?;
    let field = PrimeField::new(p)?;
    Ok(format!("{} (mod {p})", compute_delta_fp(&setup, &field)?.delta1))
}

fn run_entry(entry: &CorpusEntry, budget: &Budget) -> CorpusRow {
    let mut row = CorpusRow {
        name: entry.name.clone(),
        delta1: None,
        verdict: "error".into(),
        witness_group: None,
        norm: None,
        known_norm: entry.known_norm(),
        norm_agrees: None,
        quotient_count: 0,
        soundness_violation: false,
        error: None,
    };
    let (pres, phi, meta) = match entry.build() {
        Ok(x) => x,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    match trivial_delta1(&pres, &phi, &meta, &budget.primes) {
        Ok(d) => row.delta1 = Some(d),
        Err(e) => row.error = Some(e.to_string()),
    }
    match certify(&pres, &phi, &meta, budget) {
        Ok(report) => {
            row.verdict = report.verdict.kind().to_string();
            if let Verdict::NotFibered { witness, .. } = &report.verdict {
                row.witness_group = Some(witness.group.clone());
                row.soundness_violation = entry.known_fibered == Some(true);
            }
            row.norm = Some(report.norm);
            row.norm_agrees = row.known_norm.map(|k| k == report.norm);
            row.quotient_count = report.ledger.len();
        }
        Err(Error::ExcludedManifold(msg)) => {
            row.verdict = "n/a".into();
            row.error = Some(format!("excluded: {msg}"));
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

/// Certifies every entry in order; per-entry failures land in the row.
pub fn run_corpus(entries: &[CorpusEntry], budget: &Budget) -> Result<CorpusSummary> {
    budget.validate()?;
    let rows: Vec<CorpusRow> = entries.iter().map(|e| run_entry(e, budget)).collect();
    let soundness_violation = rows.iter().any(|r| r.soundness_violation);
    Ok(CorpusSummary { schema: CORPUS_SCHEMA.to_string(), budget: budget.clone(), rows, soundness_violation })
}
