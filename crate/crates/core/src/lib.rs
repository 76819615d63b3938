//! Twisted Alexander polynomials of finitely presented groups and
//! fiberedness certificates for 3-manifolds.
//!
//! The pipeline runs from a group presentation with a class `φ: π → ℤ`
//! (built from a PD code, a free-group automorphism, or a `.pres` file),
//! through finite quotients `α: π → G`, to the twisted polynomials
//! `Δ₀, Δ₁, Δ₂` of the regular representation `ℤ[G]`, and finally to a
//! verdict: a quotient whose `Δ₁` is not monic, or whose degree misses
//! `|G|·‖φ‖_T + (1 + b₃)·div φ_α`, certifies that `(N, φ)` does not fiber.

pub mod alexander;
pub mod certify;
pub mod corpus;
mod error;
pub mod groups;
pub mod laurent;
pub mod words;

pub use error::{Error, Result};

pub use laurent::{Degree, Fp, Integers, LaurentPoly, PolyMatrix, PrimeField};

/// Laurent polynomial over ℤ.
pub type ZPoly = laurent::ZPoly;
/// Laurent polynomial over 𝔽_p.
pub type FpPoly = laurent::FpPoly;
/// Polynomial matrix over ℤ.
pub type ZMatrix = laurent::ZMatrix;
/// Polynomial matrix over 𝔽_p.
pub type FpMatrix = laurent::FpMatrix;
