//! Numerical check that `⟨Φ(x_γ), γ⟩ ≤ 0` for semistable `x` whose limit
//! `x_γ = lim exp(t Hρ(γ)) x` exists.

use super::flow::{gradient_flow, FlowOptions};
use super::linalg::{norm, C64};
use super::sample::random_vector;
use super::validate::rng_for;
use super::{MomentMap, OracleError};
use crate::roots::Coweight;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const LIMIT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LimitMargin {
    pub gamma: Vec<String>,
    pub draw: u64,
    /// Stream passed to [`limit_sample`].
    pub stream: u64,
    /// `⟨Φ(x_γ), γ⟩ / scale`.
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LimitReport {
    pub samples: u64,
    pub seed: u64,
    pub skipped_no_limit: u64,
    pub skipped_unstable: u64,
    pub margins: Vec<LimitMargin>,
    pub max_margin: Option<f64>,
    pub pass: bool,
}

enum Outcome {
    NoLimit,
    Unstable,
    Margin(LimitMargin),
}

/// `γ`-weights of the coordinates of `V`.
pub fn gamma_weights(mm: &MomentMap, gamma: &Coweight) -> Vec<f64> {
    let h = mm.hermitian_action(&mm.torus_coords(&gamma.to_f64()));
    (0..mm.dim_v()).map(|i| h[(i, i)].re).collect()
}

/// The sample used by [`check_limit_proposition`] for a given stream,
/// projected to `V^{γ≤0}` if `restrict`. Even draws are restricted.
pub fn limit_sample(mm: &MomentMap, gamma: &Coweight, seed: u64, stream: u64, restrict: bool) -> Vec<C64> {
    let mut rng = rng_for(seed, stream);
    let mut x = random_vector(mm.dim_v(), &mut rng);
    if restrict {
        for (z, w) in x.iter_mut().zip(gamma_weights(mm, gamma)) {
            if w > 1e-12 {
                *z = C64::new(0.0, 0.0);
            }
        }
    }
    x
}

/// For each draw and each `γ`: `x` is drawn either in `V^{γ≤0}` or in all of
/// `V`; the limit exists iff `x` has no component of positive `γ`-weight.
pub fn check_limit_proposition(
    mm: &MomentMap,
    gammas: &[Coweight],
    samples: u64,
    seed: u64,
) -> Result<LimitReport, OracleError> {
    let dim = mm.dim_v();
    if dim == 0 {
        return Err(OracleError::MissingRepresentation);
    }
    let jobs: Vec<(u64, usize)> = (0..samples).flat_map(|d| (0..gammas.len()).map(move |g| (d, g))).collect();
    let outcomes: Vec<Outcome> = jobs
        .into_par_iter()
        .map(|(draw, gi)| {
            let gamma = gammas[gi].to_f64();
            let x_dir = mm.torus_coords(&gamma);
            let weights = gamma_weights(mm, &gammas[gi]);
            let stream = draw * gammas.len() as u64 + gi as u64;
            let x = limit_sample(mm, &gammas[gi], seed, stream, draw % 2 == 0);
            if x.iter().zip(&weights).any(|(z, &w)| w > 1e-12 && z.norm() > 0.0) {
                return Outcome::NoLimit;
            }
            let flow = gradient_flow(mm, &x, &FlowOptions::default());
            if !flow.is_semistable() {
                return Outcome::Unstable;
            }
            let x_gamma: Vec<C64> =
                x.iter().zip(&weights).map(|(z, &w)| if w.abs() <= 1e-12 { *z } else { C64::new(0.0, 0.0) }).collect();
            let g_norm = gamma.iter().map(|a| a * a).sum::<f64>().sqrt();
            let scale = g_norm * (1.0 + norm(&x).powi(2));
            let margin = MomentMap::pair(&mm.phi(&x_gamma), &x_dir) / scale;
            Outcome::Margin(LimitMargin {
                gamma: gammas[gi].coords().iter().map(|c| c.to_string()).collect(),
                draw,
                stream,
                margin,
            })
        })
        .collect();
    let mut report =
        LimitReport { samples, seed, skipped_no_limit: 0, skipped_unstable: 0, margins: Vec::new(), max_margin: None, pass: true };
    for o in outcomes {
        match o {
            Outcome::NoLimit => report.skipped_no_limit += 1,
            Outcome::Unstable => report.skipped_unstable += 1,
            Outcome::Margin(m) => {
                report.max_margin = Some(report.max_margin.map_or(m.margin, |x| x.max(m.margin)));
                report.margins.push(m);
            }
        }
    }
    report.pass = report.max_margin.is_none_or(|m| m <= LIMIT_TOL);
    Ok(report)
}
