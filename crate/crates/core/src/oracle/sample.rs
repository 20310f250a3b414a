//! Random points of `π(K̃ξ̃)` (plus `Φ_V(v)` in the `× V` case).

use super::linalg::{eigh, haar_unitary, CMatrix, C64};
use super::{MomentMap, OracleError};
use crate::roots::{FactorKind, RootDatum};
use rand::Rng;
use rand_distr::StandardNormal;

/// Largest block accepted by the samplers.
pub const MAX_BLOCK: usize = 16;

/// Input spectra and the dominant output `ξ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectraSample {
    pub inputs: Vec<Vec<f64>>,
    pub output: Vec<f64>,
    pub seed: u64,
    pub draw: u64,
}

pub(crate) fn check_size(datum: &RootDatum) -> Result<(), OracleError> {
    match datum.factors().iter().map(|f| f.size).max() {
        Some(n) if n > MAX_BLOCK => Err(OracleError::TooLarge(n)),
        _ => Ok(()),
    }
}

/// A block-diagonal unitary, Haar on each factor with roots and the identity on tori.
pub fn block_haar<R: Rng + ?Sized>(datum: &RootDatum, rng: &mut R) -> CMatrix {
    let mut u = CMatrix::identity(datum.ambient_dim());
    for f in datum.factors().iter().filter(|f| f.has_roots()) {
        u.set_block(f.offset, &haar_unitary(f.size, rng));
    }
    u
}

/// Dominant coordinates of a Hermitian matrix: decreasing eigenvalues of each
/// block with roots, diagonal entries on tori.
pub fn dominant_spectrum(datum: &RootDatum, m: &CMatrix) -> Result<Vec<f64>, OracleError> {
    let mut out = vec![0.0; datum.ambient_dim()];
    for f in datum.factors() {
        let r = f.range();
        if f.has_roots() {
            let e = eigh(&m.block(r.clone()))?;
            out[r].copy_from_slice(&e.values);
        } else {
            for i in r {
                out[i] = m[(i, i)].re;
            }
        }
    }
    Ok(out)
}

fn check_spectrum(datum: &RootDatum, xi: &[f64]) -> Result<(), OracleError> {
    if xi.len() != datum.ambient_dim() {
        return Err(OracleError::Input(format!("spectrum has {} entries, expected {}", xi.len(), datum.ambient_dim())));
    }
    for f in datum.factors() {
        let v = &xi[f.range()];
        if f.has_roots() && v.windows(2).any(|w| w[0] < w[1]) {
            return Err(OracleError::Input(format!("spectrum on {f} is not weakly decreasing")));
        }
        if f.kind == FactorKind::Su {
            let scale = v.iter().fold(1.0f64, |m, x| m.max(x.abs()));
            if v.iter().sum::<f64>().abs() > 1e-12 * scale {
                return Err(OracleError::Input(format!("spectrum on {f} is not trace-free")));
            }
        }
    }
    Ok(())
}

/// `-Σ U_i diag(ξ̃_i) U_i*` for the given unitaries.
pub fn orbit_sum(spectra: &[Vec<f64>], unitaries: &[CMatrix]) -> CMatrix {
    let n = spectra.first().map_or(0, Vec::len);
    let mut m = CMatrix::zeros(n);
    for (xi, u) in spectra.iter().zip(unitaries) {
        m.add_scaled_in_place(-1.0, &u.mul(&CMatrix::diag_real(xi)).mul(&u.adjoint()));
    }
    m
}

/// Dominant representative of `-Σ U_i diag(ξ̃_i) U_i*` for Haar-random `U_i`.
pub fn sample_orbit_sum<R: Rng + ?Sized>(
    datum: &RootDatum,
    spectra: &[Vec<f64>],
    rng: &mut R,
) -> Result<Vec<f64>, OracleError> {
    check_size(datum)?;
    for xi in spectra {
        check_spectrum(datum, xi)?;
    }
    let us: Vec<CMatrix> = spectra.iter().map(|_| block_haar(datum, rng)).collect();
    dominant_spectrum(datum, &orbit_sum(spectra, &us))
}

/// A random dominant point of `t*`, with occasional repeated entries.
pub fn random_dominant<R: Rng + ?Sized>(datum: &RootDatum, rng: &mut R) -> Vec<f64> {
    let mut out = vec![0.0; datum.ambient_dim()];
    for f in datum.factors() {
        let r = f.range();
        let mut v: Vec<f64> = (0..f.size).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        for i in 1..v.len() {
            if rng.random::<f64>() < 0.15 {
                v[i] = v[i - 1];
            }
        }
        if f.has_roots() {
            v.sort_by(|a, b| b.total_cmp(a));
        }
        if f.kind == FactorKind::Su {
            let mean = v.iter().sum::<f64>() / v.len() as f64;
            v.iter_mut().for_each(|x| *x -= mean);
        }
        out[r].copy_from_slice(&v);
    }
    out
}

/// Standard complex Gaussian vector.
pub fn random_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<C64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    (0..dim)
        .map(|_| C64::new(rng.sample::<f64, _>(StandardNormal) * s, rng.sample::<f64, _>(StandardNormal) * s))
        .collect()
}

/// Sample coordinates on `T*K̃ × V`: the `K` component is the dominant form of
/// `-Σ U_i diag(ξ̃_i) U_i* + Φ_V(v)`.
#[derive(Debug, Clone)]
pub struct Configuration {
    pub spectra: Vec<Vec<f64>>,
    pub unitaries: Vec<CMatrix>,
    pub v: Vec<C64>,
}

impl Configuration {
    pub fn random<R: Rng + ?Sized>(datum: &RootDatum, copies: usize, dim_v: usize, rng: &mut R) -> Self {
        let spectra = (0..copies).map(|_| random_dominant(datum, rng)).collect();
        let unitaries = (0..copies).map(|_| block_haar(datum, rng)).collect();
        let radius = rng.random::<f64>() * 2.0;
        let v = random_vector(dim_v, rng).into_iter().map(|z| z * radius).collect();
        Configuration { spectra, unitaries, v }
    }

    pub fn matrix(&self, mm: Option<&MomentMap>) -> CMatrix {
        let mut m = orbit_sum(&self.spectra, &self.unitaries);
        if let Some(mm) = mm {
            if !self.v.is_empty() {
                m = m.add(&mm.hermitian(&mm.phi_v(&self.v)));
            }
        }
        m
    }

    /// Copies' spectra followed by the dominant `ξ`, and the scale
    /// `max(‖ξ̃‖_∞, ‖M_Φ‖_max)`.
    pub fn evaluate(&self, datum: &RootDatum, mm: Option<&MomentMap>) -> Result<(Vec<Vec<f64>>, f64), OracleError> {
        let xi = dominant_spectrum(datum, &self.matrix(mm))?;
        let mut scale = self.spectra.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
        if let Some(mm) = mm {
            if !self.v.is_empty() {
                scale = scale.max(mm.hermitian(&mm.phi_v(&self.v)).max_abs());
            }
        }
        let mut factors = self.spectra.clone();
        factors.push(xi);
        Ok((factors, scale))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_copy_is_reversed_negation() {
        let d = RootDatum::parse("su(3)").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let xi = vec![2.0, 0.5, -2.5];
        let out = sample_orbit_sum(&d, &[xi], &mut rng).unwrap();
        for (a, b) in out.iter().zip([2.5, -0.5, -2.0]) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn su2_pair_bounded() {
        let d = RootDatum::parse("su(2)").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..2000 {
            let out = sample_orbit_sum(&d, &[vec![1.0, -1.0], vec![1.0, -1.0]], &mut rng).unwrap();
            assert!(out[0] <= 2.0 + 1e-12 && out[0] >= -1e-12);
        }
        let z = sample_orbit_sum(&d, &[vec![0.0, 0.0]], &mut rng).unwrap();
        assert_eq!(z, vec![0.0, 0.0]);
    }

    #[test]
    fn rejects_bad_spectra() {
        let d = RootDatum::parse("su(2)").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        assert!(sample_orbit_sum(&d, &[vec![-1.0, 1.0]], &mut rng).is_err());
        assert!(sample_orbit_sum(&d, &[vec![1.0, 0.0]], &mut rng).is_err());
        let big = RootDatum::parse("u(17)").unwrap();
        assert!(matches!(
            sample_orbit_sum(&big, &[vec![0.0; 17]], &mut rng),
            Err(OracleError::TooLarge(17))
        ));
    }
}
