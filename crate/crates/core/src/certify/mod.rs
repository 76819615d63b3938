//! Property (M) per quotient, and Condition (*) (Property (M) for every
//! finite quotient) truncated to a budget of catalog groups. A failure over ℤ certifies that `(N, φ)` does not fiber; a run
//! with no failure is only evidence.

mod run;
mod verdict;

pub use run::{certify, Budget, CertReport, NormSource, Verdict, REPORT_SCHEMA};
pub use verdict::{
    check_property_m, infer_norm, Evidence, ModPCheck, NormContradiction, NormObservation, PropertyMVerdict,
};
