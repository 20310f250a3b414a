//! Candidate pairs `(γ, w̃)`, their dimension, trace and Schubert conditions, and
//! the resulting H-representation.

mod generate;
mod polytope;
mod prune;

pub use generate::{generate_inequalities, GenerateError, GenerateOptions, GenerationStats};
pub use polytope::{
    eval_f64, factor_name, fingerprint, Inequality, LinearConstraint, Membership, MembershipError, Point, PolytopeDescription,
    PolytopeParseError, Violation, SCHEMA,
};
pub use prune::prune_redundant;

use crate::admissible::GroupSetup;
use crate::exact::Rational;
use crate::roots::{Coweight, WeylElement};
use crate::schubert::{BorelPolynomial, FlagVariety, SchubertError};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    /// Keep pairs with Schubert number exactly one.
    Ressayre,
    /// Keep pairs with Schubert number at least one.
    Infinitesimal,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Ressayre => "ressayre",
            Mode::Infinitesimal => "infinitesimal",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ressayre" => Ok(Mode::Ressayre),
            "infinitesimal" => Ok(Mode::Infinitesimal),
            _ => Err(format!("unknown mode {s:?}; expected ressayre or infinitesimal")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Fails,
    /// Schubert number at least two.
    Infinitesimal,
    /// Schubert number exactly one.
    Ressayre,
}

impl Classification {
    pub fn kept_by(self, mode: Mode) -> bool {
        match mode {
            Mode::Ressayre => self == Classification::Ressayre,
            Mode::Infinitesimal => self != Classification::Fails,
        }
    }
}

/// Dimension count `dim ñ^{w̃γ>0} + dim n^{γ>0}` against `dim k̃_C^{w̃γ>0} + dim V^{γ>0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConditionA {
    pub holds: bool,
    /// `[dim ñ^{w̃γ>0}, dim n^{γ>0}, dim k̃_C^{w̃γ>0} (+ dim V^{γ>0})]`.
    pub dims: [u64; 3],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceCondition {
    pub holds: bool,
    pub lhs: Rational,
    pub rhs: Rational,
}

fn positive_count(setup: &GroupSetup, g: &Coweight) -> u64 {
    setup.datum().root_signs(g).0 as u64
}

pub fn condition_a(setup: &GroupSetup, gamma: &Coweight, w: &[WeylElement]) -> ConditionA {
    let datum = setup.datum();
    let tilde: u64 = w.iter().map(|wi| positive_count(setup, &wi.apply(gamma))).sum();
    let n = positive_count(setup, gamma);
    let (p, _, neg) = datum.root_signs(gamma);
    let vpos = setup.v_weights().graded_pieces(gamma).positive.dim();
    let rhs = w.len() as u64 * (p + neg) as u64 + vpos;
    ConditionA { holds: tilde + n == rhs, dims: [tilde, n, rhs] }
}

/// `Σ_{α>0, ⟨α,δ⟩<0} -⟨α,δ⟩`, i.e. the sum over negative roots pairing positively.
fn negative_root_sum(setup: &GroupSetup, delta: &Coweight) -> Rational {
    setup
        .datum()
        .positive_roots()
        .iter()
        .map(|a| a.pair(delta))
        .filter(|p| p.is_negative())
        .map(|p| -p)
        .sum()
}

pub fn condition_trace(setup: &GroupSetup, gamma: &Coweight, w: &[WeylElement]) -> TraceCondition {
    let lhs: Rational = setup
        .datum()
        .positive_roots()
        .iter()
        .map(|a| a.pair(gamma))
        .filter(|p| p.is_positive())
        .sum();
    let rhs: Rational = w.iter().map(|wi| negative_root_sum(setup, &wi.apply(gamma))).sum::<Rational>()
        + setup.v_weights().trace_gamma_positive(gamma);
    TraceCondition { holds: lhs == rhs, lhs, rhs }
}

/// Top coefficient of `[X_γ] · Π σ(w_i) · Eul(V^{γ>0})` on an already built `F_γ`.
pub fn schubert_number(setup: &GroupSetup, flag: &FlagVariety, w: &[WeylElement]) -> Result<BigInt, SchubertError> {
    let mut p = flag.to_polynomial(&flag.class_of_x_gamma())?;
    for wi in w {
        p = p.mul(&flag.to_polynomial(&flag.class_of_orbit(wi))?);
    }
    let vpos = setup.v_weights().graded_pieces(flag.gamma()).positive;
    p = p.mul(&flag.euler_polynomial(&vpos)?);
    flag.point_coefficient_of(&p)
}

pub fn condition_schubert(setup: &GroupSetup, gamma: &Coweight, w: &[WeylElement]) -> Result<BigInt, SchubertError> {
    let flag = FlagVariety::new(setup.datum(), gamma)?;
    schubert_number(setup, &flag, w)
}

/// Polynomial pieces reused across candidates sharing a flag variety.
pub(crate) fn euler_and_x_gamma(setup: &GroupSetup, flag: &FlagVariety) -> Result<BorelPolynomial, SchubertError> {
    let vpos = setup.v_weights().graded_pieces(flag.gamma()).positive;
    Ok(flag.to_polynomial(&flag.class_of_x_gamma())?.mul(&flag.euler_polynomial(&vpos)?))
}

/// A candidate `(γ, w̃)` with its certificates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairRecord {
    pub gamma: Coweight,
    pub w: Vec<WeylElement>,
    pub dim_a: [u64; 3],
    pub trace_lhs: Rational,
    pub trace_rhs: Rational,
    pub schubert_n: BigInt,
    pub classification: Classification,
}

impl PairRecord {
    pub fn classify(a: &ConditionA, t: &TraceCondition, n: &BigInt) -> Classification {
        if !a.holds || !t.holds || n.is_zero() || n.is_negative() {
            Classification::Fails
        } else if n.is_one() {
            Classification::Ressayre
        } else {
            Classification::Infinitesimal
        }
    }
}

/// Full evaluation of one candidate; the Schubert product is skipped when the
/// dimension count already fails, since grading forces it to vanish.
pub fn evaluate_pair(setup: &GroupSetup, flag: &FlagVariety, w: &[WeylElement]) -> Result<PairRecord, SchubertError> {
    let gamma = flag.gamma();
    let a = condition_a(setup, gamma, w);
    let t = condition_trace(setup, gamma, w);
    let n = if a.holds { schubert_number(setup, flag, w)? } else { BigInt::zero() };
    Ok(PairRecord {
        gamma: gamma.clone(),
        w: w.to_vec(),
        dim_a: a.dims,
        classification: PairRecord::classify(&a, &t, &n),
        trace_lhs: t.lhs,
        trace_rhs: t.rhs,
        schubert_n: n,
    })
}
