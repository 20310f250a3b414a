//! Facet inequalities for moment polytopes of `T*K̃` and `T*K̃ × V`, where `K` is a
//! product of special unitary, unitary and torus factors embedded diagonally in
//! `K̃ = K^s`, together with numerical oracles that check the output.
//!
//! The pipeline runs [`admissible::enumerate_admissible`], then for each admissible
//! one-parameter subgroup and each tuple of minimal coset representatives checks
//! a dimension count, a trace identity and a Schubert calculus product
//! ([`ressayre`]). The [`oracle`] module samples the moment map directly.

pub mod admissible;
pub mod exact;
pub mod oracle;
pub mod ressayre;
pub mod roots;
pub mod schubert;
