use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::setup::TwistedSetup;
use crate::groups::div_phi_alpha;
use crate::laurent::{
    reduce_rows_tracking, Coefficient, ExactDivError, Fp, Integers, LaurentPoly, PolyJson, PolyMatrix, PrimeField,
    RingTag,
};
use crate::{Error, Result};

/// Which computation produced a set of polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Route {
    /// `Δ₁ = det(∂₂ without the pivot block) · Δ₀ / det(Φ(x_pivot) − I)` over ℤ.
    #[serde(rename = "wada-Z")]
    WadaZ,
    /// Module orders from Smith forms of the full chain complex over `𝔽_p`.
    #[serde(rename = "smith-Fp")]
    SmithFp,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::WadaZ => "wada-Z",
            Route::SmithFp => "smith-Fp",
        })
    }
}

/// `Δ₀, Δ₁, Δ₂` of one setup over one coefficient ring, all normalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexPolys<C: Coefficient> {
    pub delta0: LaurentPoly<C>,
    pub delta1: LaurentPoly<C>,
    pub delta2: LaurentPoly<C>,
    pub div: u64,
    pub route: Route,
    /// Generator whose column block was removed (ℤ route only).
    pub pivot: Option<usize>,
    pub group: String,
    pub images: Vec<String>,
}

/// Serialized [`AlexPolys`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlexJson {
    pub group: String,
    pub images: Vec<String>,
    pub div: u64,
    pub delta0: PolyJson,
    pub delta1: PolyJson,
    pub delta2: PolyJson,
    pub route: Route,
    pub ring: String,
    pub pivot: Option<usize>,
}

impl<C: Coefficient> AlexPolys<C> {
    pub fn ring_tag(&self) -> RingTag {
        self.delta1.ring_tag()
    }

    pub fn to_json(&self) -> AlexJson {
        AlexJson {
            group: self.group.clone(),
            images: self.images.clone(),
            div: self.div,
            delta0: self.delta0.to_json(),
            delta1: self.delta1.to_json(),
            delta2: self.delta2.to_json(),
            route: self.route,
            ring: self.ring_tag().to_string(),
            pivot: self.pivot,
        }
    }
}

/// `(1 − t^div)^power`, normalized.
pub fn one_minus_t_power<C: Coefficient>(ring: &C::Ring, div: u64, power: u32) -> LaurentPoly<C> {
    let base = &LaurentPoly::one(ring) - &LaurentPoly::t_power(ring, div as i64);
    base.pow(power).normalized()
}

fn finish<C: Coefficient>(
    setup: &TwistedSetup<'_>,
    ring: &C::Ring,
    delta0: LaurentPoly<C>,
    delta1: LaurentPoly<C>,
    div: u64,
    route: Route,
    pivot: Option<usize>,
) -> AlexPolys<C> {
    let delta2 = if delta1.is_zero() {
        LaurentPoly::zero(ring)
    } else {
        one_minus_t_power(ring, div, setup.meta.b3 as u32 * setup.image_index() as u32)
    };
    AlexPolys {
        delta0: delta0.normalized(),
        delta1: delta1.normalized(),
        delta2,
        div,
        route,
        pivot,
        group: setup.alpha.target().name().to_string(),
        images: setup.alpha.image_names(),
    }
}

/// `det(Φ(x_j) − I)` from the cycle type of left multiplication by `α(x_j)`:
/// each of the `|G|/m` cycles of length `m = ord α(x_j)` contributes
/// `t^{m·φ(x_j)} − 1` up to a unit.
fn pivot_block_det<C: Coefficient>(setup: &TwistedSetup<'_>, ring: &C::Ring, j: usize) -> LaurentPoly<C> {
    let group = setup.alpha.target();
    let m = group.element_order(setup.alpha.images()[j]);
    let e = setup.phi.values()[j] * m as i64;
    let cycle = &LaurentPoly::t_power(ring, e) - &LaurentPoly::one(ring);
    cycle.pow((group.order() / m) as u32)
}

/// Twisted polynomials over ℤ by the pivot-deletion route. Requires a
/// deficiency-one presentation; otherwise the result is
/// [`Error::UnavailableOverZ`].
pub fn compute_delta_z(setup: &TwistedSetup<'_>) -> Result<AlexPolys<BigInt>> {
    if setup.pres.deficiency() != 1 {
        return Err(Error::UnavailableOverZ(format!(
            "deficiency {} presentation; the pivot route needs deficiency 1",
            setup.pres.deficiency()
        )));
    }
    let ring = &Integers;
    let pivot = setup.pivot()?;
    let div = div_phi_alpha(setup.pres, setup.phi, &setup.alpha)?;
    let delta0 = one_minus_t_power(ring, div, setup.image_index() as u32);
    let n = setup.group_order();
    let k = setup.pres.num_generators();
    let f = setup.fox_matrix::<BigInt>(ring);
    let rows: Vec<usize> = (0..f.rows()).collect();
    let cols: Vec<usize> = (0..k * n).filter(|c| c / n != pivot).collect();
    let d = f.select(&rows, &cols).det_fraction_free()?;
    let p = pivot_block_det::<BigInt>(setup, ring, pivot);
    let delta1 = (&d * &delta0).exact_div(&p).map_err(|e| match e {
        ExactDivError::DivisionByZero => Error::Inconsistent("pivot block determinant vanished".into()),
        ExactDivError::NotDivisible => Error::Inconsistent(format!(
            "det(Phi(x{pivot}) - I) does not divide the pivot minor times Delta_0; \
             the presentation may not come from a 3-manifold"
        )),
    })?;
    Ok(finish(setup, ring, delta0, delta1, div, Route::WadaZ, Some(pivot)))
}

/// Reduced chain complex `C₂ → C₁ → C₀` over `𝔽_p[t±]`, after row-reducing
/// `∂₁` and carrying the change of basis into `∂₂`.
pub(crate) struct ReducedComplex {
    /// `∂₂` restricted to the complement of the pivot rows of `∂₁`.
    pub h1_presentation: PolyMatrix<Fp>,
    /// Nonzero rows of the reduced `∂₁`.
    pub h0_presentation: PolyMatrix<Fp>,
}

pub(crate) fn reduced_complex(setup: &TwistedSetup<'_>, field: &PrimeField) -> Result<ReducedComplex> {
    let n = setup.group_order();
    let mut f = setup.fox_matrix::<Fp>(field);
    let mut b = setup.boundary_one::<Fp>(field);
    let rank = reduce_rows_tracking(&mut b, &mut f)?;
    if rank != n {
        return Err(Error::Inconsistent(format!("boundary map to C0 has rank {rank} < {n}; phi acts trivially")));
    }
    let all_rows: Vec<usize> = (0..f.rows()).collect();
    let head: Vec<usize> = (0..rank).collect();
    if !f.select(&all_rows, &head).is_zero() {
        return Err(Error::Inconsistent("d2 * d1 != 0 after reduction".into()));
    }
    let tail: Vec<usize> = (rank..f.cols()).collect();
    let all_cols: Vec<usize> = (0..b.cols()).collect();
    Ok(ReducedComplex { h1_presentation: f.select(&all_rows, &tail), h0_presentation: b.select(&head, &all_cols) })
}

/// Order of the cokernel of a row-presentation matrix: the product of its
/// invariant factors, or zero when the relations do not have full column rank.
fn module_order(m: &PolyMatrix<Fp>, field: &PrimeField) -> Result<LaurentPoly<Fp>> {
    if m.cols() == 0 {
        return Ok(LaurentPoly::one(field));
    }
    if m.rows() < m.cols() {
        return Ok(LaurentPoly::zero(field));
    }
    let factors = m.smith_diagonal()?;
    Ok(factors.iter().fold(LaurentPoly::one(field), |acc, d| &acc * d))
}

/// Twisted polynomials over `𝔽_p` from the Smith forms of the full chain
/// complex. Works for any deficiency.
pub fn compute_delta_fp(setup: &TwistedSetup<'_>, field: &PrimeField) -> Result<AlexPolys<Fp>> {
    setup.pivot()?;
    let div = div_phi_alpha(setup.pres, setup.phi, &setup.alpha)?;
    let complex = reduced_complex(setup, field)?;
    let delta1 = module_order(&complex.h1_presentation, field)?;
    let delta0 = module_order(&complex.h0_presentation, field)?;
    Ok(finish(setup, field, delta0, delta1, div, Route::SmithFp, None))
}

/// Comparison of `Δ₁` over ℤ, reduced mod `p`, with `Δ₁` over `𝔽_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModPConsistency {
    /// The extreme coefficients survive mod `p` and the two sides agree.
    Agree,
    /// `p` divides an extreme coefficient, so the reduction loses degree and
    /// the two sides are not expected to match.
    DegreeDrop,
    /// The extreme coefficients survive but the polynomials differ.
    Disagree,
}

pub fn delta_mod_p_consistency(
    z: &LaurentPoly<BigInt>,
    fp: &LaurentPoly<Fp>,
    field: &PrimeField,
) -> ModPConsistency {
    let reduced = z.reduce_mod(field);
    let drops = match (z.leading(), z.trailing()) {
        (Some(l), Some(t)) => field.reduce(l).is_zero() || field.reduce(t).is_zero(),
        _ => false,
    };
    if drops {
        ModPConsistency::DegreeDrop
    } else if reduced.normalized() == fp.normalized() {
        ModPConsistency::Agree
    } else {
        ModPConsistency::Disagree
    }
}

/// For knot-type inputs the polynomial is symmetric up to units, so the top
/// coefficient is a unit exactly when the bottom one is.
pub fn extreme_units_agree<C: Coefficient>(f: &LaurentPoly<C>) -> bool {
    match (f.leading(), f.trailing()) {
        (Some(l), Some(t)) => l.is_unit() == t.is_unit(),
        _ => true,
    }
}
