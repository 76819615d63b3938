use std::fmt;

use serde::{Deserialize, Serialize};

use crate::alexander::{AlexPolys, ManifoldMeta, ModPConsistency};
use crate::groups::Hom;
use crate::laurent::{Coefficient, PolyJson};
use crate::{Error, Result};

/// How strong the evidence behind a ledger entry is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Evidence {
    /// Computed over ℤ; monicness is decided exactly.
    #[serde(rename = "Z-exact")]
    ZExact,
    /// Only `𝔽_p` polynomials are available, so monicness is vacuous and the
    /// degree may have dropped.
    #[serde(rename = "Fp-only")]
    FpOnly,
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Evidence::ZExact => "Z-exact",
            Evidence::FpOnly => "Fp-only",
        })
    }
}

/// Result of a mod-`p` cross-check of one ledger entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModPCheck {
    pub prime: u32,
    /// Against the ℤ-route `Δ₁`; absent when only `𝔽_p` is available.
    pub consistency: Option<ModPConsistency>,
    /// `Δ₀` over `𝔽_p` equals `(1 − t^div)^{[G : im α]}`.
    pub delta0_law: bool,
}

/// Property (M) for one quotient: `Δ₁` monic and
/// `deg Δ₁ = |G|·x + (1 + b₃)·div`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyMVerdict {
    pub group: String,
    pub group_order: usize,
    pub images: Vec<String>,
    pub div: u64,
    pub ring: String,
    pub delta1: PolyJson,
    pub delta1_text: String,
    pub monic: bool,
    /// `None` when `Δ₁ = 0`.
    pub degree: Option<u64>,
    pub expected_degree: u64,
    pub pass: bool,
    pub evidence: Evidence,
    pub mod_p: Vec<ModPCheck>,
}

impl PropertyMVerdict {
    pub fn zero_delta(&self) -> bool {
        self.degree.is_none()
    }
}

/// Checks Property (M) for one set of polynomials against the norm `x`.
/// A zero `Δ₁` fails.
pub fn check_property_m<C: Coefficient>(
    alex: &AlexPolys<C>,
    norm: i64,
    meta: &ManifoldMeta,
    hom: &Hom,
) -> Result<PropertyMVerdict> {
    if norm < 0 {
        return Err(Error::InvalidInput(format!("Thurston norm must be nonnegative, got {norm}")));
    }
    let order = hom.target().order();
    let expected_degree = order as u64 * norm as u64 + (1 + meta.b3 as u64) * alex.div;
    let degree = alex.delta1.deg_span().finite();
    let monic = alex.delta1.is_monic().unwrap_or(false);
    let evidence = if C::is_field() { Evidence::FpOnly } else { Evidence::ZExact };
    Ok(PropertyMVerdict {
        group: hom.target().name().to_string(),
        group_order: order,
        images: hom.image_names(),
        div: alex.div,
        ring: alex.ring_tag().to_string(),
        delta1: alex.delta1.to_json(),
        delta1_text: alex.delta1.to_string(),
        monic,
        degree,
        expected_degree,
        pass: monic && degree == Some(expected_degree),
        evidence,
        mod_p: Vec::new(),
    })
}

/// One degree observation `deg Δ₁ = |G|·x + (1 + b₃)·div` to solve for `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormObservation {
    pub group_order: usize,
    pub degree: u64,
    pub div: u64,
}

impl From<&PropertyMVerdict> for Option<NormObservation> {
    fn from(v: &PropertyMVerdict) -> Self {
        v.degree.map(|degree| NormObservation { group_order: v.group_order, degree, div: v.div })
    }
}

/// Two observations that no single nonnegative integer norm satisfies. The
/// indices coincide when one observation alone has no solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormContradiction {
    pub first: usize,
    pub second: usize,
    /// The solution each observation demands, as a reduced fraction.
    pub first_value: String,
    pub second_value: String,
}

fn fraction(num: i64, den: i64) -> String {
    let g = num_integer::gcd(num, den).max(1);
    if den / g == 1 {
        format!("{}", num / g)
    } else {
        format!("{}/{}", num / g, den / g)
    }
}

/// The unique `x ≥ 0` solving every observation.
pub fn infer_norm(observations: &[NormObservation], b3: u8) -> std::result::Result<Option<u64>, NormContradiction> {
    let solve = |o: &NormObservation| (o.degree as i64 - (1 + b3 as i64) * o.div as i64, o.group_order as i64);
    let mut first: Option<(usize, i64, i64)> = None;
    for (i, o) in observations.iter().enumerate() {
        let (num, den) = solve(o);
        if num < 0 || num % den != 0 {
            return Err(NormContradiction {
                first: i,
                second: i,
                first_value: fraction(num, den),
                second_value: fraction(num, den),
            });
        }
        match first {
            None => first = Some((i, num, den)),
            Some((j, n0, d0)) if n0 * den != num * d0 => {
                return Err(NormContradiction {
                    first: j,
                    second: i,
                    first_value: fraction(n0, d0),
                    second_value: fraction(num, den),
                });
            }
            Some(_) => {}
        }
    }
    Ok(first.map(|(_, n, d)| (n / d) as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inconsistent_synthetic_ledger() {
        let obs = [
            NormObservation { group_order: 1, degree: 2, div: 1 },
            NormObservation { group_order: 2, degree: 5, div: 1 },
        ];
        let err = infer_norm(&obs, 0).unwrap_err();
        assert_eq!((err.first, err.second), (0, 1));
        assert_eq!((err.first_value.as_str(), err.second_value.as_str()), ("1", "2"));
    }

    #[test]
    fn consistent_ledger() {
        let obs = [
            NormObservation { group_order: 1, degree: 2, div: 1 },
            NormObservation { group_order: 6, degree: 8, div: 2 },
        ];
        assert_eq!(infer_norm(&obs, 0), Ok(Some(1)));
        assert_eq!(infer_norm(&[], 0), Ok(None));
    }

    #[test]
    fn fractional_solution_is_a_contradiction() {
        let obs = [NormObservation { group_order: 2, degree: 4, div: 1 }];
        let err = infer_norm(&obs, 0).unwrap_err();
        assert_eq!(err.first_value, "3/2");
    }
}
