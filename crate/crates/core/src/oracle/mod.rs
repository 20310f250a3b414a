//! Numerical oracles: coadjoint orbit sampling, moment maps on `V`, the
//! norm-square gradient flow and Kempf–Ness functions.

pub mod flow;
pub mod kempf_ness;
pub mod limit;
pub mod linalg;
pub mod probe;
pub mod rep;
pub mod sample;
pub mod validate;

pub use flow::{gradient_flow, FlowOptions, FlowState};
pub use kempf_ness::{kempf_ness_along_ray, RayIntegrand, RayPoint};
pub use limit::{check_limit_proposition, limit_sample, LimitMargin, LimitReport};
pub use rep::{MomentMap, NamedRep, Representation};
pub use sample::{sample_orbit_sum, SpectraSample};
pub use validate::{facet_tightness, monte_carlo_validate, McReport, TightnessReport};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("representation: {0}")]
    Representation(String),
    #[error("central shift: {0}")]
    Shift(String),
    #[error("the setup has a module V but no representation matrices")]
    MissingRepresentation,
    #[error("block of size {0} exceeds the desk-scale limit of 16")]
    TooLarge(usize),
    #[error("polytope fingerprint {found} does not match the setup ({expected})")]
    FingerprintMismatch { expected: String, found: String },
    #[error(transparent)]
    Eigen(#[from] linalg::EigenError),
    #[error("Kempf-Ness integrand decreased from {before} to {after} at s = {at}")]
    NotMonotone { at: f64, before: f64, after: f64 },
    #[error("invalid input: {0}")]
    Input(String),
}
