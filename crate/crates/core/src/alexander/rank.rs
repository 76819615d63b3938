//! Dimension count for `H₁` over `𝔽_p` by plain linear algebra.
//!
//! With `Q = 𝔽_p[t]/(f)` and `f = (Δ₁·Δ₀)²`, every invariant factor of `H₁`
//! and `H₀` divides `f`, so by universal coefficients
//! `dim H₁(C⊗Q) = dim(H₁⊗Q) + dim Tor(H₀, Q) = deg Δ₁ + deg Δ₀`.
//! The left side is computed from ranks of the boundary maps with every
//! polynomial entry replaced by its multiplication matrix on `Q`; nothing
//! from the Smith form enters except the choice of `f`.

use serde::Serialize;

use super::delta::compute_delta_fp;
use super::setup::TwistedSetup;
use crate::laurent::{Fp, LaurentPoly, PolyMatrix, PrimeField};
use crate::{Error, Result};

/// Outcome of a rank check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RankCheck {
    /// `deg Δ₁` from the invariant factors.
    pub degree: u64,
    /// `dim H₁(C⊗Q) − deg Δ₀` from ranks over `𝔽_p`.
    pub dimension: u64,
}

impl RankCheck {
    pub fn holds(&self) -> bool {
        self.degree == self.dimension
    }
}

/// Arithmetic in `𝔽_p[t]/(f)` for monic `f` of degree ≥ 2 with nonzero
/// constant term, in the basis `1, t, …, t^{d−1}`.
struct Quotient {
    field: PrimeField,
    /// Coefficients of `f` below the leading 1.
    f: Vec<u64>,
}

impl Quotient {
    fn p(&self) -> u64 {
        self.field.modulus() as u64
    }

    fn dim(&self) -> usize {
        self.f.len()
    }

    /// `t · v`
    fn times_t(&self, v: &[u64]) -> Vec<u64> {
        let (d, p) = (self.dim(), self.p());
        let top = v[d - 1];
        let mut out = vec![0; d];
        out[1..].copy_from_slice(&v[..d - 1]);
        for (o, fi) in out.iter_mut().zip(&self.f) {
            *o = (*o + p - top * fi % p) % p;
        }
        out
    }

    /// `t⁻¹ · v`, using `t⁻¹ = −(f₁ + f₂t + … + t^{d−1})/f₀`.
    fn times_t_inv(&self, v: &[u64]) -> Vec<u64> {
        let (d, p) = (self.dim(), self.p());
        let f0_inv = self.field.elem(self.f[0]).inverse().value() as u64;
        let c0 = v[0];
        let mut out = vec![0; d];
        out[..d - 1].copy_from_slice(&v[1..]);
        for (i, o) in out.iter_mut().enumerate() {
            let next = if i + 1 < d { self.f[i + 1] } else { 1 };
            *o = (*o + p - c0 * f0_inv % p * next % p) % p;
        }
        out
    }

    fn reduce(&self, a: &LaurentPoly<Fp>) -> Vec<u64> {
        let p = self.p();
        let mut acc = vec![0; self.dim()];
        if a.is_zero() {
            return acc;
        }
        let mut power = vec![0; self.dim()];
        power[0] = 1;
        let low = a.low_exponent();
        for _ in 0..low.unsigned_abs() {
            power = if low >= 0 { self.times_t(&power) } else { self.times_t_inv(&power) };
        }
        for c in a.coeffs() {
            let c = c.value() as u64;
            if c != 0 {
                for (x, y) in acc.iter_mut().zip(&power) {
                    *x = (*x + c * y) % p;
                }
            }
            power = self.times_t(&power);
        }
        acc
    }
}

/// Dense `𝔽_p` matrix of `v ↦ v·M` on `Q^{rows}`: block `(i, j)` has row `s`
/// equal to `t^s · M_ij` in `Q`.
fn expand(m: &PolyMatrix<Fp>, q: &Quotient) -> Vec<Vec<u64>> {
    let d = q.dim();
    let mut out = vec![vec![0u64; m.cols() * d]; m.rows() * d];
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if m[(i, j)].is_zero() {
                continue;
            }
            let mut v = q.reduce(&m[(i, j)]);
            for s in 0..d {
                out[i * d + s][j * d..(j + 1) * d].copy_from_slice(&v);
                if s + 1 < d {
                    v = q.times_t(&v);
                }
            }
        }
    }
    out
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>, field: &PrimeField) -> usize {
    let p = field.modulus() as u64;
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, pr);
        let inv = field.elem(rows[rank][c]).inverse().value() as u64;
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[c] == 0 {
                continue;
            }
            let factor = row[c];
            for (x, y) in row.iter_mut().zip(&pivot).skip(c) {
                *x = (*x + p - factor * y % p) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Compares `deg Δ₁` over `𝔽_p` with an independent dimension count.
/// Requires `Δ₁ ≠ 0`.
pub fn rank_check(setup: &TwistedSetup<'_>, field: &PrimeField) -> Result<RankCheck> {
    let alex = compute_delta_fp(setup, field)?;
    if alex.delta1.is_zero() {
        return Err(Error::Precondition("rank check needs a nonzero Delta_1".into()));
    }
    let degree = alex.delta1.deg_span().finite().unwrap();
    let delta0_degree = alex.delta0.deg_span().finite().unwrap();
    let f = (&alex.delta1 * &alex.delta0).normalized();
    let f = &f * &f;
    let coeffs = f.coeffs();
    let q = Quotient { field: *field, f: coeffs[..coeffs.len() - 1].iter().map(|c| c.value() as u64).collect() };
    let d = q.dim() as u64;
    let b = expand(&setup.boundary_one::<Fp>(field), &q);
    let fox = expand(&setup.fox_matrix::<Fp>(field), &q);
    let c1 = setup.pres.num_generators() as u64 * setup.group_order() as u64 * d;
    let rank_b = rank_mod_p(b, field) as u64;
    let rank_f = rank_mod_p(fox, field) as u64;
    let h1 = c1 - rank_b - rank_f;
    Ok(RankCheck { degree, dimension: h1.saturating_sub(delta0_degree) })
}
