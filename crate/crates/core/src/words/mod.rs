//! Free-group words, finite presentations, Fox calculus, and the two
//! presentation builders (knot diagrams and mapping tori).

mod automorphism;
mod fox;
mod pd;
mod presentation;
mod word;

pub use automorphism::{mapping_torus, FreeAutomorphism, NielsenMove};
pub use fox::{fox_derivative, FoxElement};
pub use pd::{wirtinger, PdCode};
pub use presentation::{phi_of_word, PhiClass, Presentation};
pub use word::{default_names, Letter, Word};
