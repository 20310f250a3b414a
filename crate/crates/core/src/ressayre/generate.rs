use super::polytope::{chamber_constraints, fingerprint, Inequality, PolytopeDescription};
use super::prune::prune_redundant;
use super::{condition_a, condition_trace, euler_and_x_gamma, Classification, Mode, PairRecord};
use crate::admissible::{check_hypotheses, enumerate_admissible, GroupSetup, Refusal};
use crate::exact;
use crate::roots::{Coweight, WeylElement};
use crate::schubert::{BorelPolynomial, FlagVariety, SchubertError};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenerateOptions {
    pub mode: Mode,
    /// Each admissible `γ` is replaced by `gamma_scale · γ` before evaluation.
    pub gamma_scale: u32,
    pub prune_lp: bool,
}

impl Default for GenerateOptions {
    fn default() -> Self {
        GenerateOptions { mode: Mode::Ressayre, gamma_scale: 1, prune_lp: false }
    }
}

impl GenerateOptions {
    pub fn with_mode(mode: Mode) -> Self {
        GenerateOptions { mode, ..Self::default() }
    }
}

/// Candidate counts at each stage.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct GenerationStats {
    pub admissible: usize,
    pub candidates: usize,
    pub passed_dimension: usize,
    pub passed_trace: usize,
    pub nonzero_schubert: usize,
    pub ressayre_pairs: usize,
    pub kept_pairs: usize,
    pub inequalities: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenerateError {
    #[error("refused: {0}")]
    Refused(#[from] Refusal),
    #[error(transparent)]
    Schubert(#[from] SchubertError),
    #[error("gamma_scale must be positive")]
    ZeroScale,
}

fn tuples(reps: &[WeylElement], s: usize) -> Vec<Vec<WeylElement>> {
    let mut out = vec![Vec::new()];
    for _ in 0..s {
        out = out
            .into_iter()
            .flat_map(|t| {
                reps.iter().map(move |w| {
                    let mut t = t.clone();
                    t.push(w.clone());
                    t
                })
            })
            .collect();
    }
    out
}

struct Outcome {
    passed_dimension: bool,
    passed_trace: bool,
    record: Option<PairRecord>,
}

fn evaluate_gamma(setup: &GroupSetup, gamma: &Coweight) -> Result<Vec<Outcome>, SchubertError> {
    let datum = setup.datum();
    let flag = FlagVariety::new(datum, gamma)?;
    let reps = datum.minimal_coset_reps(gamma);
    let orbit: BTreeMap<WeylElement, BorelPolynomial> = reps
        .iter()
        .map(|w| Ok((w.clone(), flag.to_polynomial(&flag.class_of_orbit(w))?)))
        .collect::<Result<_, SchubertError>>()?;
    let base = euler_and_x_gamma(setup, &flag)?;
    tuples(&reps, setup.copies())
        .into_par_iter()
        .map(|w| {
            let a = condition_a(setup, gamma, &w);
            if !a.holds {
                return Ok(Outcome { passed_dimension: false, passed_trace: false, record: None });
            }
            let t = condition_trace(setup, gamma, &w);
            if !t.holds {
                return Ok(Outcome { passed_dimension: true, passed_trace: false, record: None });
            }
            let mut p = base.clone();
            for wi in &w {
                p = p.mul(&orbit[wi]);
            }
            let n: BigInt = flag.point_coefficient_of(&p)?;
            let classification = PairRecord::classify(&a, &t, &n);
            let record = PairRecord {
                gamma: gamma.clone(),
                w,
                dim_a: a.dims,
                trace_lhs: t.lhs,
                trace_rhs: t.rhs,
                schubert_n: n,
                classification,
            };
            Ok(Outcome { passed_dimension: true, passed_trace: true, record: Some(record) })
        })
        .collect()
}

/// The H-representation of the Kirwan polyhedron for `setup`.
pub fn generate_inequalities(setup: &GroupSetup, options: &GenerateOptions) -> Result<PolytopeDescription, GenerateError> {
    if options.gamma_scale == 0 {
        return Err(GenerateError::ZeroScale);
    }
    let properness = check_hypotheses(setup)?;
    let admissible: Vec<Coweight> = enumerate_admissible(setup).into_iter().map(|a| a.gamma).collect();
    let q = exact::int(i64::from(options.gamma_scale));
    let per_gamma: Vec<Vec<Outcome>> = admissible
        .par_iter()
        .map(|g| evaluate_gamma(setup, &g.scaled(&q)))
        .collect::<Result<_, _>>()?;

    let mut stats = GenerationStats { admissible: admissible.len(), ..Default::default() };
    let mut grouped: BTreeMap<_, Inequality> = BTreeMap::new();
    for outcome in per_gamma.into_iter().flatten() {
        stats.candidates += 1;
        stats.passed_dimension += usize::from(outcome.passed_dimension);
        stats.passed_trace += usize::from(outcome.passed_trace);
        let Some(rec) = outcome.record else { continue };
        if rec.classification == Classification::Fails {
            continue;
        }
        stats.nonzero_schubert += 1;
        stats.ressayre_pairs += usize::from(rec.classification == Classification::Ressayre);
        if !rec.classification.kept_by(options.mode) {
            continue;
        }
        stats.kept_pairs += 1;
        let ineq = Inequality::from_pair(rec);
        match grouped.entry(ineq.key()) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(ineq);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let src = ineq.source;
                e.get_mut().also_from.push((src.gamma, src.w));
            }
        }
    }
    let mut inequalities: Vec<Inequality> = grouped.into_values().collect();
    for q in &mut inequalities {
        q.also_from.sort();
    }
    let (chamber, trace_equalities) = chamber_constraints(setup.datum(), setup.copies());
    let mut p = PolytopeDescription {
        fingerprint: fingerprint(setup),
        datum: setup.datum().clone(),
        copies: setup.copies(),
        v_weights: setup.v_weights().expanded(),
        properness: properness.to_string(),
        mode: options.mode,
        prune_lp: options.prune_lp,
        admissible,
        inequalities,
        pruned: Vec::new(),
        chamber,
        trace_equalities,
        stats,
    };
    if options.prune_lp {
        prune_redundant(&mut p);
    }
    p.stats.inequalities = p.inequalities.len();
    Ok(p)
}
