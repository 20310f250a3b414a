use super::{generic_stabilizer_dim, GroupSetup};
use crate::exact::{self, Rational};
use crate::oracle::{probe, MomentMap};
use crate::roots::{FactorKind, Weight};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use std::fmt;

/// Why generation refuses to run on a setup.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Refusal {
    #[error("{factor} diagonal: shared central ideal - use su(n) + trace equality")]
    CentralIdeal { factor: String },
    #[error("s = 1 and no V: q = 0, so the generic stabilizer is the whole torus")]
    NothingToGenerate,
    #[error("nonzero weights of q + V span a space of dimension {span} < rank {rank}; the generic stabilizer is not finite")]
    GenericStabilizer { span: usize, rank: usize },
    #[error("V is not known to be proper: 0 lies in the convex hull of its weights{probe}; set assume_proper to override")]
    NotProper { probe: String },
}

/// How properness of `V` was established.
#[derive(Debug, Clone, PartialEq)]
pub enum Properness {
    NoModule,
    /// `0 ∉ conv(weights)`, decided exactly.
    TorusLevel,
    /// Minimum of `‖Φ_V‖` on the unit sphere, found numerically.
    NumericalProbe { min_norm: f64 },
    Assumed,
}

impl fmt::Display for Properness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Properness::NoModule => write!(f, "no V"),
            Properness::TorusLevel => write!(f, "torus-level check only"),
            Properness::NumericalProbe { min_norm } => {
                write!(f, "numerical probe: min |Phi_V| on the unit sphere = {min_norm:.6}")
            }
            Properness::Assumed => write!(f, "assumed by configuration"),
        }
    }
}

/// Smallest value of `min |Φ_V|` on the unit sphere accepted as proper.
pub const PROBE_THRESHOLD: f64 = 1e-2;

/// Exact test of `0 ∈ conv(weights)` through Carathéodory: some affinely
/// independent subset of at most `rank + 1` weights has `0` as a convex combination.
pub fn zero_in_hull(weights: &[Weight], rank: usize) -> bool {
    let distinct: Vec<&Weight> = weights.iter().collect::<BTreeSet<_>>().into_iter().collect();
    if distinct.iter().any(|w| w.is_zero()) {
        return true;
    }
    let n = distinct.first().map_or(0, |w| w.len());
    for k in 2..=(rank + 1).min(distinct.len()) {
        for subset in super::combinations(distinct.len(), k) {
            let mut a: Vec<Vec<Rational>> = (0..n)
                .map(|i| subset.iter().map(|&j| distinct[j].coords()[i].clone()).collect())
                .collect();
            a.push(vec![Rational::one(); k]);
            let mut b = vec![Rational::zero(); n];
            b.push(Rational::one());
            if let Some(l) = exact::solve_unique(&a, &b, k) {
                if l.iter().all(|x| !x.is_negative()) {
                    return true;
                }
            }
        }
    }
    false
}

/// Decides properness of `V`: torus-level exact check, then a numerical probe
/// when matrices are available, then the configuration override.
pub fn properness(setup: &GroupSetup) -> Result<Properness, Refusal> {
    let Some(v) = setup.v() else {
        return Ok(Properness::NoModule);
    };
    if !zero_in_hull(&v.weights.expanded(), setup.datum().rank()) {
        return Ok(Properness::TorusLevel);
    }
    let mut probe_note = String::new();
    if let Some(rep) = &v.representation {
        let mm = MomentMap::new(setup.datum(), rep.clone());
        let min_norm = probe::min_moment_norm_on_sphere(&mm, 24, 0x5eed);
        if min_norm > PROBE_THRESHOLD {
            return Ok(Properness::NumericalProbe { min_norm });
        }
        probe_note = format!(", and the numerical probe reached |Phi_V| = {min_norm:.2e} on the unit sphere");
    }
    if v.assume_proper {
        return Ok(Properness::Assumed);
    }
    Err(Refusal::NotProper { probe: probe_note })
}

/// The standing hypotheses for generation: finite generic stabilizer on `q ⊕ V`
/// and a proper `V`.
pub fn check_hypotheses(setup: &GroupSetup) -> Result<Properness, Refusal> {
    let datum = setup.datum();
    let stab = generic_stabilizer_dim(setup);
    if stab > 0 {
        if setup.copies() == 1 && setup.v().is_none() {
            return Err(Refusal::NothingToGenerate);
        }
        let module = setup.total_module();
        for f in datum.factors().iter().filter(|f| f.kind != FactorKind::Su) {
            let mut central = vec![Rational::zero(); datum.ambient_dim()];
            for x in &mut central[f.range()] {
                *x = Rational::one();
            }
            let central = crate::roots::Coweight::new(central);
            if module.nonzero_weights().all(|(w, _)| w.pair(&central).is_zero()) {
                return Err(Refusal::CentralIdeal { factor: f.to_string() });
            }
        }
        let rank = datum.rank();
        return Err(Refusal::GenericStabilizer { span: rank - stab, rank });
    }
    properness(setup)
}
