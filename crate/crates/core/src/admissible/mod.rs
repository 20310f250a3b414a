//! Admissible one-parameter subgroups for `K ⊂ K^s` acting on `T*K̃` (optionally `× V`).

mod hypothesis;

pub use hypothesis::{check_hypotheses, properness, Properness, Refusal};

use crate::exact::{self, Rational};
use crate::oracle::Representation;
use crate::roots::{Coweight, RootDatum, RootError, Weight, WeightedModule};
use rayon::prelude::*;
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SetupError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("copy count must be at least 1")]
    NoCopies,
    #[error("representation has dimension {rep} but {weights} weights were declared")]
    RepDimension { rep: usize, weights: u64 },
    #[error("representation weights do not match the declared weight list")]
    RepWeights,
    #[error("gamma must be nonzero")]
    ZeroGamma,
}

/// The module `V`: its weights, and optionally explicit matrices for the oracle.
#[derive(Debug, Clone)]
pub struct VData {
    pub weights: WeightedModule,
    pub representation: Option<Representation>,
    pub assume_proper: bool,
}

/// `K` (with its root datum), the number `s` of copies in `K̃ = K^s`, and `V`.
#[derive(Debug, Clone)]
pub struct GroupSetup {
    datum: RootDatum,
    copies: usize,
    v: Option<VData>,
}

impl GroupSetup {
    /// Validates the setup; `V` weights are projected onto `t*`.
    pub fn new(datum: RootDatum, copies: usize, v: Option<VData>) -> Result<Self, SetupError> {
        if copies == 0 {
            return Err(SetupError::NoCopies);
        }
        let v = match v {
            None => None,
            Some(mut vd) => {
                let mut projected = WeightedModule::new();
                for (w, m) in vd.weights.iter() {
                    datum.check_len(w.len())?;
                    projected.insert(datum.project(w), m);
                }
                vd.weights = projected;
                if let Some(rep) = &vd.representation {
                    if rep.dim() as u64 != vd.weights.dim() {
                        return Err(SetupError::RepDimension { rep: rep.dim(), weights: vd.weights.dim() });
                    }
                    if !crate::oracle::rep::weights_match(&datum, rep, &vd.weights.expanded()) {
                        return Err(SetupError::RepWeights);
                    }
                }
                (!vd.weights.is_empty()).then_some(vd)
            }
        };
        Ok(GroupSetup { datum, copies, v })
    }

    pub fn without_v(datum: RootDatum, copies: usize) -> Result<Self, SetupError> {
        Self::new(datum, copies, None)
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    pub fn v(&self) -> Option<&VData> {
        self.v.as_ref()
    }

    /// Weights of `V`, empty when absent.
    pub fn v_weights(&self) -> WeightedModule {
        self.v.as_ref().map(|v| v.weights.clone()).unwrap_or_default()
    }

    /// `q ⊕ V`.
    pub fn total_module(&self) -> WeightedModule {
        q_module_weights(self).direct_sum(&self.v_weights())
    }
}

/// `q = k̃/k` for the diagonal embedding: every root with multiplicity `s-1`,
/// and the zero weight with multiplicity `(s-1)·rank`.
pub fn q_module_weights(setup: &GroupSetup) -> WeightedModule {
    let k = (setup.copies - 1) as u64;
    let mut m = WeightedModule::new();
    if k == 0 {
        return m;
    }
    for (w, mult) in setup.datum.adjoint_module().iter() {
        m.insert(w.clone(), mult * k);
    }
    m
}

/// A rational admissible element with its span certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleElement {
    pub gamma: Coweight,
    /// Nonzero weights of `q ⊕ V` vanishing on `γ`.
    pub certificate: WeightedModule,
    pub span_rank: usize,
}

fn span_rank(weights: &[&Weight], n: usize) -> usize {
    let rows: Vec<Vec<Rational>> = weights.iter().map(|w| w.coords().to_vec()).collect();
    exact::rank(&rows, n)
}

/// `dim` of the generic torus stabilizer on `q ⊕ V`: `rank - rank(nonzero weights)`.
pub fn generic_stabilizer_dim(setup: &GroupSetup) -> usize {
    let m = setup.total_module();
    let ws: Vec<&Weight> = m.nonzero_weights().map(|(w, _)| w).collect();
    setup.datum.rank() - span_rank(&ws, setup.datum.ambient_dim())
}

fn certificate(setup: &GroupSetup, module: &WeightedModule, gamma: &Coweight) -> AdmissibleElement {
    let mut cert = WeightedModule::new();
    for (w, m) in module.nonzero_weights() {
        if num_traits::Zero::is_zero(&w.pair(gamma)) {
            cert.insert(w.clone(), m);
        }
    }
    let ws: Vec<&Weight> = cert.iter().map(|(w, _)| w).collect();
    let span_rank = span_rank(&ws, setup.datum.ambient_dim());
    AdmissibleElement { gamma: gamma.clone(), certificate: cert, span_rank }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Every primitive `γ` whose vanishing nonzero weights of `q ⊕ V` span `γ^⊥`.
///
/// Empty when the generic torus stabilizer is positive-dimensional.
pub fn enumerate_admissible(setup: &GroupSetup) -> Vec<AdmissibleElement> {
    if generic_stabilizer_dim(setup) > 0 {
        return Vec::new();
    }
    let datum = &setup.datum;
    let n = datum.ambient_dim();
    let r = datum.rank();
    let module = setup.total_module();
    let lines: Vec<Weight> = module
        .nonzero_weights()
        .map(|(w, _)| w.line_representative())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let trace_rows = datum.trace_rows();
    let normals: BTreeSet<Coweight> = combinations(lines.len(), r - 1)
        .into_par_iter()
        .filter_map(|subset| {
            let mut rows: Vec<Vec<Rational>> = subset.iter().map(|&i| lines[i].coords().to_vec()).collect();
            rows.extend(trace_rows.iter().cloned());
            let ns = exact::nullspace(&rows, n);
            (ns.len() == 1).then(|| Coweight::new(ns.into_iter().next().expect("one vector")).primitive())
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flat_map(|g| [g.neg(), g])
        .collect();
    normals
        .into_iter()
        .map(|g| certificate(setup, &module, &g))
        .filter(|a| a.span_rank + 1 == r)
        .collect()
}

/// Admissibility of a single `γ`, with its certificate when admissible.
pub fn is_admissible(setup: &GroupSetup, gamma: &Coweight) -> Result<Option<AdmissibleElement>, SetupError> {
    setup.datum.check_in_t(gamma)?;
    if gamma.is_zero() {
        return Err(SetupError::ZeroGamma);
    }
    if generic_stabilizer_dim(setup) > 0 {
        return Ok(None);
    }
    let a = certificate(setup, &setup.total_module(), &gamma.primitive());
    Ok((a.span_rank + 1 == setup.datum.rank()).then_some(a))
}
