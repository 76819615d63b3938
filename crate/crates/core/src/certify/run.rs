use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::verdict::{check_property_m, infer_norm, Evidence, ModPCheck, NormObservation, PropertyMVerdict};
use crate::alexander::{
    compute_delta_fp, compute_delta_z, delta_mod_p_consistency, one_minus_t_power, AlexPolys, ManifoldMeta,
    ModPConsistency, TwistedSetup,
};
use crate::groups::{catalog, surjections_up_to_automorphism, Hom, MAX_CATALOG_ORDER};
use crate::laurent::{is_prime, Fp, PrimeField};
use crate::words::{PhiClass, Presentation};
use crate::{Error, Result};

pub const REPORT_SCHEMA: &str = "fibercert-report/1";

/// How far a certification run may go.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_order: usize,
    pub primes: Vec<u32>,
    pub time_limit_ms: Option<u64>,
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_order: 12, primes: vec![2, 3, 5], time_limit_ms: None }
    }
}

impl Budget {
    pub fn new(max_order: usize, primes: Vec<u32>) -> Result<Self> {
        let budget = Self { max_order, primes, time_limit_ms: None };
        budget.validate()?;
        Ok(budget)
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit_ms = Some(limit.as_millis() as u64);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_order == 0 {
            return Err(Error::InvalidInput("max order must be at least 1".into()));
        }
        if self.max_order > MAX_CATALOG_ORDER {
            return Err(Error::OrderTooLarge(self.max_order));
        }
        if let Some(p) = self.primes.iter().find(|&&p| !is_prime(p as u64)) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        Ok(())
    }
}

/// Outcome of a run. `ConsistentUpTo` is evidence, not a proof of fibering:
/// the criterion quantifies over every finite group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Verdict {
    NotFibered { witness: PropertyMVerdict, justification: String },
    ConsistentUpTo { max_order: usize, quotient_count: usize },
    Degenerate { reason: String },
    /// The time limit stopped the run after every group of order at most
    /// `completed_order` was checked without a failure.
    Truncated { completed_order: usize, quotient_count: usize },
}

impl Verdict {
    pub fn kind(&self) -> &'static str {
        match self {
            Verdict::NotFibered { .. } => "NotFibered",
            Verdict::ConsistentUpTo { .. } => "ConsistentUpTo",
            Verdict::Degenerate { .. } => "Degenerate",
            Verdict::Truncated { .. } => "Truncated",
        }
    }

    /// Process exit code for the command line.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::ConsistentUpTo { .. } => 0,
            Verdict::NotFibered { .. } => 3,
            Verdict::Degenerate { .. } | Verdict::Truncated { .. } => 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormSource {
    Hint,
    /// `x = max(0, deg Δ₁ − (1 + b₃)·div)` at the trivial quotient.
    TrivialQuotient,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertReport {
    pub schema: String,
    pub tool_version: String,
    pub label: String,
    pub meta: ManifoldMeta,
    pub phi: Vec<i64>,
    pub budget: Budget,
    pub verdict: Verdict,
    /// The `x` every ledger entry was checked against.
    pub norm: u64,
    pub norm_source: NormSource,
    /// Solution of the degree equations of the passing entries.
    pub inferred_norm: Option<u64>,
    /// Some `Δ₁` vanished, which happens for non-prime manifolds.
    pub possibly_not_prime: bool,
    pub ledger: Vec<PropertyMVerdict>,
    pub warnings: Vec<String>,
}

impl CertReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), column: e.column(), message: e.to_string() })
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyMVerdict> {
        self.ledger.iter().filter(|v| !v.pass)
    }
}

/// Everything computed for one quotient before the norm is known.
struct Computed {
    hom: Hom,
    z: Option<AlexPolys<BigInt>>,
    fp: Vec<(PrimeField, AlexPolys<Fp>)>,
}

impl Computed {
    /// Best available degree of `Δ₁`; over `𝔽_p` only the maximum is a lower
    /// bound for the integral degree.
    fn degree(&self) -> Option<u64> {
        match &self.z {
            Some(z) => z.delta1.deg_span().finite(),
            None => self.fp.iter().filter_map(|(_, a)| a.delta1.deg_span().finite()).max(),
        }
    }

    fn div(&self) -> u64 {
        self.z.as_ref().map_or_else(|| self.fp[0].1.div, |z| z.div)
    }
}

struct Context<'a> {
    pres: &'a Presentation,
    phi: &'a PhiClass,
    meta: &'a ManifoldMeta,
    fields: Vec<PrimeField>,
}

impl Context<'_> {
    fn compute(&self, hom: Hom) -> Result<Computed> {
        let setup = TwistedSetup::new(self.pres, self.phi, hom, self.meta)?;
        let z = if self.pres.deficiency() == 1 { Some(compute_delta_z(&setup)?) } else { None };
        let fp = self.fields.iter().map(|f| Ok((*f, compute_delta_fp(&setup, f)?))).collect::<Result<Vec<_>>>()?;
        Ok(Computed { hom: setup.alpha, z, fp })
    }

    /// The ledger entry plus any internal inconsistencies found while
    /// cross-checking routes.
    fn judge(&self, c: &Computed, norm: u64) -> Result<(PropertyMVerdict, Vec<String>)> {
        let norm = norm as i64;
        let mut problems = Vec::new();
        let where_ = || format!("{} [{}]", c.hom.target().name(), c.hom.image_names().join(", "));
        let mut verdict = match &c.z {
            Some(z) => check_property_m(z, norm, self.meta, &c.hom)?,
            None => {
                let mut checks =
                    c.fp.iter().map(|(_, a)| check_property_m(a, norm, self.meta, &c.hom)).collect::<Result<Vec<_>>>()?;
                let pick = checks.iter().position(|v| !v.pass).unwrap_or(0);
                checks.swap_remove(pick)
            }
        };
        let index = c.hom.target().order() / c.hom.image().len();
        for (field, fp) in &c.fp {
            let law = one_minus_t_power(field, fp.div, index as u32);
            let delta0_law = fp.delta0 == law;
            if !delta0_law {
                problems.push(format!("Delta_0 over F{} is {} at {}, expected {}", field.modulus(), fp.delta0, where_(), law));
            }
            let consistency = c.z.as_ref().map(|z| delta_mod_p_consistency(&z.delta1, &fp.delta1, field));
            if consistency == Some(ModPConsistency::Disagree) {
                problems.push(format!("Z and F{} routes disagree at {}", field.modulus(), where_()));
            }
            if fp.div != c.div() {
                problems.push(format!("div differs between routes at {}", where_()));
            }
            verdict.mod_p.push(ModPCheck { prime: field.modulus(), consistency, delta0_law });
        }
        Ok((verdict, problems))
    }
}

fn justification(v: &PropertyMVerdict) -> String {
    match v.degree {
        None => format!("Delta_1 vanishes over {} at {}", v.ring, v.group),
        Some(_) if !v.monic => format!("Delta_1 = {} over {} is not monic", v.delta1_text, v.ring),
        Some(d) => format!("deg Delta_1 = {d} but |G| x + (1 + b3) div = {}", v.expected_degree),
    }
}

/// Checks Condition (*) on every surjection onto a catalog group of order at
/// most `budget.max_order`, in canonical order, stopping at the first
/// failure.
pub fn certify(pres: &Presentation, phi: &PhiClass, meta: &ManifoldMeta, budget: &Budget) -> Result<CertReport> {
    budget.validate()?;
    if pres.is_infinite_cyclic_free() {
        return Err(Error::ExcludedManifold(
            "<x | > is the group of S^1 x D^2 or S^1 x S^2, where the degree formula does not apply".into(),
        ));
    }
    phi.validate(pres)?;
    if phi.values().iter().all(|&v| v == 0) {
        return Err(Error::Precondition("phi must be nontrivial".into()));
    }
    if pres.deficiency() != 1 && budget.primes.is_empty() {
        return Err(Error::InvalidInput(
            "a presentation of deficiency other than 1 needs at least one prime".into(),
        ));
    }
    let fields = budget.primes.iter().map(|&p| PrimeField::new(p)).collect::<Result<Vec<_>>>()?;
    let ctx = Context { pres, phi, meta, fields };
    let start = Instant::now();
    let deadline = budget.time_limit_ms.map(Duration::from_millis);
    let groups = catalog(budget.max_order)?;

    let trivial = ctx.compute(Hom::trivial(pres))?;
    let (norm, norm_source) = match meta.norm_hint {
        Some(x) => (x, NormSource::Hint),
        None => {
            let offset = (1 + meta.b3 as u64) * trivial.div();
            (trivial.degree().unwrap_or(0).saturating_sub(offset), NormSource::TrivialQuotient)
        }
    };

    let mut ledger: Vec<PropertyMVerdict> = Vec::new();
    let mut warnings = Vec::new();
    let mut degenerate: Option<String> = None;
    let mut outcome: Option<Verdict> = None;
    let mut completed_order = 0;

    let mut trivial = Some(trivial);
    'groups: for group in &groups {
        if let Some(limit) = deadline {
            if start.elapsed() > limit {
                outcome = Some(Verdict::Truncated { completed_order, quotient_count: ledger.len() });
                break;
            }
        }
        let results: Vec<Result<(PropertyMVerdict, Vec<String>)>> = if group.order() == 1 {
            vec![ctx.judge(trivial.as_ref().expect("trivial group is first"), norm)]
        } else {
            surjections_up_to_automorphism(pres, group)
                .into_par_iter()
                .map(|hom| ctx.compute(hom).and_then(|c| ctx.judge(&c, norm)))
                .collect()
        };
        trivial = None;
        for r in results {
            let (v, problems) = match r {
                Ok(x) => x,
                Err(e) => {
                    degenerate.get_or_insert_with(|| format!("computation failed at {}: {e}", group.name()));
                    break 'groups;
                }
            };
            if !problems.is_empty() {
                degenerate.get_or_insert_with(|| problems[0].clone());
                warnings.extend(problems);
            }
            let failed = !v.pass;
            let evidence = v.evidence;
            ledger.push(v);
            if failed {
                let v = ledger.last().unwrap();
                if evidence == Evidence::ZExact {
                    outcome = Some(Verdict::NotFibered { witness: v.clone(), justification: justification(v) });
                    break 'groups;
                }
                let msg = format!(
                    "Fp-only failure at {} [{}]: {}",
                    v.group,
                    v.images.join(", "),
                    justification(v)
                );
                degenerate.get_or_insert_with(|| msg.clone());
                warnings.push(msg);
            }
        }
        completed_order = group.order();
    }

    let verdict = match outcome {
        Some(v @ Verdict::NotFibered { .. }) => v,
        other => match degenerate {
            Some(reason) => Verdict::Degenerate { reason },
            None => other.unwrap_or(Verdict::ConsistentUpTo { max_order: budget.max_order, quotient_count: ledger.len() }),
        },
    };
    let observations: Vec<NormObservation> =
        ledger.iter().filter(|v| v.pass).filter_map(Option::<NormObservation>::from).collect();
    let inferred_norm = match infer_norm(&observations, meta.b3) {
        Ok(x) => x,
        Err(c) => {
            warnings.push(format!(
                "passing entries {} and {} demand norms {} and {}",
                c.first, c.second, c.first_value, c.second_value
            ));
            None
        }
    };
    let possibly_not_prime = ledger.iter().any(PropertyMVerdict::zero_delta);
    Ok(CertReport {
        schema: REPORT_SCHEMA.to_string(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        label: meta.label.clone(),
        meta: meta.clone(),
        phi: phi.values().to_vec(),
        budget: budget.clone(),
        verdict,
        norm,
        norm_source,
        inferred_norm,
        possibly_not_prime,
        ledger,
        warnings,
    })
}
