//! Finite quotients: a small catalog of groups given by multiplication tables,
//! enumeration of homomorphisms from a presentation, and the divisibility
//! `div φ_α` that enters the degree formula.

mod catalog;
mod group;
mod homs;

pub use catalog::{catalog, group_by_name, MAX_CATALOG_ORDER};
pub use group::{cycle_notation, FiniteGroup};
pub use homs::{
    div_phi_alpha, double_cosets, enumerate_homs, enumerate_homs_raw, image_equal, surjections_up_to_automorphism,
    DoubleCosetDecomp, Hom,
};
