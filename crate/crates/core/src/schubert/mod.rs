//! Schubert calculus on partial flag varieties of type A.
//!
//! Products are computed in the Borel presentation: a class is a polynomial in
//! the Chern roots and its Schubert expansion is read off with divided
//! differences. [`lr`] is an independent Littlewood–Richardson oracle used to
//! test the engine on Grassmannians.

mod flag;
pub mod lr;
mod poly;

pub use flag::{CohomologyClass, FlagKey, FlagVariety};
pub use poly::{BorelPolynomial, SchubertPolynomials};

use crate::roots::RootError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchubertError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("flag varieties need a nonzero gamma")]
    ZeroGamma,
    #[error("{0} is not a minimal coset representative")]
    NotMinimal(String),
    #[error("classes live on different flag varieties")]
    MismatchedFlag,
    #[error("weight has {got} coordinates, the Chern root frame has {expected}")]
    WeightFrame { expected: usize, got: usize },
    #[error("coefficient of {class} is {value}, not an integer")]
    NonIntegral { class: String, value: String },
}
