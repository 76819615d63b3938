//! Exact Laurent-polynomial arithmetic over ℤ and 𝔽_p.

mod coeff;
mod euclid;
mod matrix;
mod poly;

pub use coeff::{is_prime, CoeffRing, Coefficient, Fp, Integers, PrimeField, RingTag};
pub use euclid::gcd_univariate;
pub(crate) use matrix::reduce_rows_tracking;
pub use matrix::PolyMatrix;
pub use poly::{Degree, ExactDivError, LaurentPoly, PolyJson};

pub type ZPoly = LaurentPoly<num_bigint::BigInt>;
pub type FpPoly = LaurentPoly<Fp>;
pub type ZMatrix = PolyMatrix<num_bigint::BigInt>;
pub type FpMatrix = PolyMatrix<Fp>;
