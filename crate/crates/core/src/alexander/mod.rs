//! Twisted Alexander polynomials `Δ₀, Δ₁, Δ₂` for the representation
//! `α ⊗ φ` on `ℤ[G][t±]`, over ℤ (pivot-deletion route) and over `𝔽_p`
//! (Smith forms of the full chain complex).

mod delta;
mod rank;
mod setup;

pub use delta::{
    compute_delta_fp, compute_delta_z, delta_mod_p_consistency, extreme_units_agree, one_minus_t_power, AlexJson,
    AlexPolys, ModPConsistency, Route,
};
pub use rank::{rank_check, RankCheck};
pub use setup::{ManifoldMeta, TwistedSetup};
