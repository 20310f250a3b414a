//! Monte Carlo validation of a generated polytope and facet tightness search.

use super::linalg::{eigh, CMatrix, HermitianEigen, C64};
use super::sample::{check_size, random_dominant, random_vector, Configuration, SpectraSample};
use super::{MomentMap, OracleError};
use crate::admissible::GroupSetup;
use crate::ressayre::{eval_f64, fingerprint, PolytopeDescription};
use crate::roots::{RootDatum, WeylElement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Relative membership tolerance without `V`.
pub const MEMBERSHIP_TOL: f64 = 1e-9;
/// Relative membership tolerance with `V` (the moment map adds eigensolver noise).
pub const MEMBERSHIP_TOL_V: f64 = 1e-8;
/// Relative slack below which an inequality counts as tight.
pub const TIGHTNESS_TOL: f64 = 1e-6;

pub(crate) fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct McReport {
    pub trials: u64,
    pub seed: u64,
    /// Largest `-value / scale` over samples and inequalities, clipped at 0.
    pub max_violation: f64,
    /// `min value / scale` for each inequality; `null` when there were no trials.
    pub per_inequality_min_slack: Vec<Option<f64>>,
    /// Samples violating some inequality beyond tolerance.
    pub violating_samples: u64,
    pub tolerance: f64,
    pub pass: bool,
}

impl McReport {
    pub fn violation_rate(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.violating_samples as f64 / self.trials as f64
        }
    }
}

/// Moment map on `V` from the setup, if `V` is present.
pub fn moment_map_for(setup: &GroupSetup) -> Result<Option<MomentMap>, OracleError> {
    match setup.v() {
        None => Ok(None),
        Some(v) => {
            let rep = v.representation.clone().ok_or(OracleError::MissingRepresentation)?;
            Ok(Some(MomentMap::new(setup.datum(), rep)))
        }
    }
}

fn check_fingerprint(p: &PolytopeDescription, setup: &GroupSetup) -> Result<(), OracleError> {
    let expected = fingerprint(setup);
    if p.fingerprint != expected {
        return Err(OracleError::FingerprintMismatch { expected, found: p.fingerprint.clone() });
    }
    Ok(())
}

/// One draw of the orbit-sum sampler without `V`, from an explicit stream.
pub fn draw_sample(datum: &RootDatum, copies: usize, seed: u64, draw: u64) -> Result<SpectraSample, OracleError> {
    let mut rng = rng_for(seed, draw);
    let c = Configuration::random(datum, copies, 0, &mut rng);
    let (mut factors, _) = c.evaluate(datum, None)?;
    let output = factors.pop().expect("K component");
    Ok(SpectraSample { inputs: factors, output, seed, draw })
}

struct Slacks {
    per_ineq: Vec<f64>,
    violating: bool,
}

/// Draws `trials` random configurations and evaluates every inequality at each.
pub fn monte_carlo_validate(
    p: &PolytopeDescription,
    setup: &GroupSetup,
    trials: u64,
    seed: u64,
) -> Result<McReport, OracleError> {
    check_fingerprint(p, setup)?;
    check_size(setup.datum())?;
    let mm = moment_map_for(setup)?;
    let tol = if mm.is_some() { MEMBERSHIP_TOL_V } else { MEMBERSHIP_TOL };
    let coeffs: Vec<Vec<Vec<f64>>> = p.inequalities.iter().map(|q| q.coeffs_f64()).collect();
    let dim_v = mm.as_ref().map_or(0, MomentMap::dim_v);
    let datum = setup.datum();
    let results: Vec<Slacks> = (0..trials)
        .into_par_iter()
        .map(|draw| {
            let mut rng = rng_for(seed, draw);
            let c = Configuration::random(datum, setup.copies(), dim_v, &mut rng);
            let (factors, scale) = c.evaluate(datum, mm.as_ref())?;
            let scale = scale.max(f64::MIN_POSITIVE);
            let per_ineq: Vec<f64> = coeffs.iter().map(|q| eval_f64(q, &factors) / scale).collect();
            let violating = per_ineq.iter().any(|&s| s < -tol);
            Ok(Slacks { per_ineq, violating })
        })
        .collect::<Result<_, OracleError>>()?;
    let mut min_slack: Vec<Option<f64>> = vec![None; coeffs.len()];
    let mut violating = 0;
    for r in &results {
        for (m, &s) in min_slack.iter_mut().zip(&r.per_ineq) {
            *m = Some(m.map_or(s, |x: f64| x.min(s)));
        }
        violating += u64::from(r.violating);
    }
    let max_violation = min_slack.iter().flatten().fold(0.0f64, |m, &s| m.max(-s));
    Ok(McReport {
        trials,
        seed,
        max_violation,
        per_inequality_min_slack: min_slack,
        violating_samples: violating,
        tolerance: tol,
        pass: max_violation <= tol,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TightnessReport {
    pub index: usize,
    pub min_slack: f64,
    pub facet: bool,
    pub evaluations: u64,
}

/// Permutation matrix with `P e_j = e_{w^{-1}(j)}`.
fn permutation_matrix(w: &WeylElement) -> CMatrix {
    let inv = w.inverse();
    let n = inv.degree();
    let mut p = CMatrix::zeros(n);
    for j in 0..n {
        p[(inv.perm()[j], j)] = C64::new(1.0, 0.0);
    }
    p
}

/// Random unitary commuting with `diag(γ)`, block-diagonal on the factors.
fn level_set_unitary<R: Rng + ?Sized>(datum: &RootDatum, gamma: &[f64], rng: &mut R) -> CMatrix {
    let n = datum.ambient_dim();
    let mut u = CMatrix::identity(n);
    for f in datum.factors().iter().filter(|f| f.has_roots()) {
        let mut levels: Vec<f64> = gamma[f.range()].to_vec();
        levels.sort_by(|a, b| a.total_cmp(b));
        levels.dedup();
        for level in levels {
            let idx: Vec<usize> = f.range().filter(|&i| gamma[i] == level).collect();
            let h = super::linalg::haar_unitary(idx.len(), rng);
            for (a, &i) in idx.iter().enumerate() {
                for (b, &j) in idx.iter().enumerate() {
                    u[(i, j)] = h[(a, b)];
                }
            }
        }
    }
    u
}

fn random_hermitian<R: Rng + ?Sized>(datum: &RootDatum, rng: &mut R) -> CMatrix {
    let mut h = CMatrix::zeros(datum.ambient_dim());
    for f in datum.factors().iter().filter(|f| f.has_roots()) {
        for i in f.range() {
            for j in f.range() {
                if i <= j {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = if i == j { 0.0 } else { rng.sample(StandardNormal) };
                    h[(i, j)] = C64::new(re, im);
                    h[(j, i)] = C64::new(re, -im);
                }
            }
        }
    }
    h
}

fn perturb_spectrum<R: Rng + ?Sized>(datum: &RootDatum, xi: &[f64], sigma: f64, rng: &mut R) -> Vec<f64> {
    let mut v: Vec<f64> = xi.iter().map(|x| x + sigma * rng.sample::<f64, _>(StandardNormal)).collect();
    for f in datum.factors() {
        let r = f.range();
        if f.has_roots() {
            v[r.clone()].sort_by(|a, b| b.total_cmp(a));
        }
        if f.kind == crate::roots::FactorKind::Su {
            let mean = v[r.clone()].iter().sum::<f64>() / f.size as f64;
            v[r].iter_mut().for_each(|x| *x -= mean);
        }
    }
    v
}

fn objective(datum: &RootDatum, mm: Option<&MomentMap>, coeffs: &[Vec<f64>], c: &Configuration) -> f64 {
    match c.evaluate(datum, mm) {
        Ok((factors, scale)) if scale > 1e-12 => eval_f64(coeffs, &factors) / scale,
        _ => f64::INFINITY,
    }
}

/// A configuration aligned with the pair `(γ, w̃)` of inequality `index`.
fn seeded<R: Rng + ?Sized>(
    p: &PolytopeDescription,
    mm: Option<&MomentMap>,
    index: usize,
    rng: &mut R,
) -> Configuration {
    let datum = &p.datum;
    let src = &p.inequalities[index].source;
    let gamma = src.gamma.to_f64();
    let spectra: Vec<Vec<f64>> = (0..p.copies).map(|_| random_dominant(datum, rng)).collect();
    let unitaries = src
        .w
        .iter()
        .map(|w| level_set_unitary(datum, &gamma, rng).mul(&permutation_matrix(w)))
        .collect();
    let v = match mm {
        None => Vec::new(),
        Some(mm) => {
            let weights = mm.representation().weights(datum);
            let radius = rng.random::<f64>() * 2.0;
            random_vector(mm.dim_v(), rng)
                .into_iter()
                .zip(&weights)
                .map(|(z, w)| {
                    let pairing: f64 = w.iter().zip(&gamma).map(|(a, b)| a * b).sum();
                    if pairing.abs() < 1e-9 { z * radius } else { C64::new(0.0, 0.0) }
                })
                .collect()
        }
    };
    Configuration { spectra, unitaries, v }
}

/// (1+1) evolution strategy on spectra, unitaries and `v`, minimizing the
/// relative value of one inequality.
fn refine<R: Rng + ?Sized>(
    datum: &RootDatum,
    mm: Option<&MomentMap>,
    coeffs: &[Vec<f64>],
    start: Configuration,
    steps: usize,
    rng: &mut R,
) -> (f64, u64) {
    let mut best = start;
    let mut val = objective(datum, mm, coeffs, &best);
    let mut sigma = 0.1;
    let mut evals = 1;
    for _ in 0..steps {
        if val <= 0.0 || sigma < 1e-14 {
            break;
        }
        let spectra = best.spectra.iter().map(|x| perturb_spectrum(datum, x, sigma, rng)).collect();
        let unitaries = best
            .unitaries
            .iter()
            .map(|u| {
                let e = eigh(&random_hermitian(datum, rng)).expect("Hermitian");
                let rot = exp_hermitian_i(&e, sigma);
                u.mul(&rot)
            })
            .collect();
        let v = best.v.iter().map(|z| z + C64::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal)) * sigma).collect();
        let cand = Configuration { spectra, unitaries, v };
        let cv = objective(datum, mm, coeffs, &cand);
        evals += 1;
        if cv < val {
            best = cand;
            val = cv;
            sigma *= 1.5;
        } else {
            sigma *= 0.9;
        }
    }
    (val, evals)
}

/// `exp(i t H)` from an eigendecomposition of `H`.
fn exp_hermitian_i(e: &HermitianEigen, t: f64) -> CMatrix {
    let n = e.values.len();
    let v = &e.vectors;
    CMatrix::from_fn(n, |i, j| {
        (0..n).map(|k| v[(i, k)] * C64::from_polar(1.0, t * e.values[k]) * v[(j, k)].conj()).sum()
    })
}

/// Minimum relative slack of inequality `index` over random and aligned
/// configurations, each refined by a local search.
pub fn facet_tightness(
    p: &PolytopeDescription,
    setup: &GroupSetup,
    index: usize,
    trials: u64,
    seed: u64,
) -> Result<TightnessReport, OracleError> {
    check_fingerprint(p, setup)?;
    if index >= p.inequalities.len() {
        return Err(OracleError::Input(format!("no inequality {index}")));
    }
    let mm = moment_map_for(setup)?;
    let coeffs = p.inequalities[index].coeffs_f64();
    tightness_of(p, mm.as_ref(), &coeffs, Some(index), trials, seed).map(|(min_slack, evaluations)| TightnessReport {
        index,
        min_slack,
        facet: min_slack <= TIGHTNESS_TOL,
        evaluations,
    })
}

/// Tightness search for arbitrary coefficients; `seed_from` chooses the pair
/// used for aligned starts.
pub fn tightness_of(
    p: &PolytopeDescription,
    mm: Option<&MomentMap>,
    coeffs: &[Vec<f64>],
    seed_from: Option<usize>,
    trials: u64,
    seed: u64,
) -> Result<(f64, u64), OracleError> {
    check_size(&p.datum)?;
    let datum = &p.datum;
    let dim_v = mm.map_or(0, MomentMap::dim_v);
    let out: Vec<(f64, u64)> = (0..trials)
        .into_par_iter()
        .map(|draw| {
            let mut rng = rng_for(seed, draw);
            let start = match seed_from {
                Some(i) if draw % 2 == 0 => seeded(p, mm, i, &mut rng),
                _ => Configuration::random(datum, p.copies, dim_v, &mut rng),
            };
            refine(datum, mm, coeffs, start, 400, &mut rng)
        })
        .collect();
    let min = out.iter().map(|x| x.0).fold(f64::INFINITY, f64::min);
    let evals = out.iter().map(|x| x.1).sum();
    Ok((min, evals))
}
