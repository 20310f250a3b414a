//! `Ψ_x(e^{-itX}) = ∫₀ᵗ ⟨Φ(exp(-s Hρ(X)) x), X⟩ ds` along a ray.

use super::linalg::{eigh, HermitianEigen, C64};
use super::{MomentMap, OracleError};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayPoint {
    pub t: f64,
    pub psi: f64,
    /// The integrand at `t`.
    pub slope: f64,
}

/// The integrand `s ↦ ⟨Φ(exp(-s Hρ(X)) x), X⟩`, non-decreasing in `s`.
pub struct RayIntegrand<'a> {
    mm: &'a MomentMap,
    dir: Vec<f64>,
    eig: HermitianEigen,
    /// `x` in the eigenbasis of `Hρ(X)`.
    coeffs: Vec<C64>,
}

impl<'a> RayIntegrand<'a> {
    pub fn new(mm: &'a MomentMap, x: &[C64], dir: &[f64]) -> Result<Self, OracleError> {
        if x.len() != mm.dim_v() || dir.len() != mm.basis().len() {
            return Err(OracleError::Input("point or direction has the wrong length".into()));
        }
        let eig = eigh(&mm.hermitian_action(dir))?;
        let coeffs = eig.vectors.adjoint().matvec(x);
        Ok(RayIntegrand { mm, dir: dir.to_vec(), eig, coeffs })
    }

    pub fn point(&self, s: f64) -> Vec<C64> {
        let scaled: Vec<C64> =
            self.coeffs.iter().zip(&self.eig.values).map(|(c, l)| c * (-s * l).exp()).collect();
        self.eig.vectors.matvec(&scaled)
    }

    pub fn value(&self, s: f64) -> f64 {
        MomentMap::pair(&self.mm.phi(&self.point(s)), &self.dir)
    }

    /// Largest `s` for which the exponentials stay comfortably finite.
    pub fn safe_horizon(&self) -> f64 {
        let m = self.eig.values.iter().fold(0.0f64, |a, l| a.max(l.abs()));
        if m == 0.0 { f64::INFINITY } else { 300.0 / m }
    }

    /// Limit of the integrand as `s → ∞`: `+∞` if `x` has a component on a
    /// negative eigenvalue of `Hρ(X)`.
    pub fn limit(&self, tol: f64) -> f64 {
        let grows = self.coeffs.iter().zip(&self.eig.values).any(|(c, &l)| l < -tol && c.norm() > tol);
        if grows {
            return f64::INFINITY;
        }
        let zero: Vec<C64> = self
            .coeffs
            .iter()
            .zip(&self.eig.values)
            .map(|(c, &l)| if l.abs() <= tol { *c } else { C64::new(0.0, 0.0) })
            .collect();
        MomentMap::pair(&self.mm.phi(&self.eig.vectors.matvec(&zero)), &self.dir)
    }
}

#[allow(clippy::too_many_arguments)]
fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Adaptive Simpson quadrature on `[a, b]`.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson(f, a, b, fa, fm, fb, whole, tol, 40)
}

/// `Ψ` at `points + 1` equally spaced times in `[0, horizon]`; errors if the
/// integrand is observed to decrease.
pub fn kempf_ness_along_ray(
    mm: &MomentMap,
    x: &[C64],
    dir: &[f64],
    horizon: f64,
    points: usize,
) -> Result<Vec<RayPoint>, OracleError> {
    let ray = RayIntegrand::new(mm, x, dir)?;
    if horizon > ray.safe_horizon() {
        return Err(OracleError::Input(format!("horizon {horizon} exceeds the safe range {}", ray.safe_horizon())));
    }
    let f = |s: f64| ray.value(s);
    let n = points.max(1);
    let mut out = vec![RayPoint { t: 0.0, psi: 0.0, slope: f(0.0) }];
    for k in 1..=n {
        let (a, b) = ((k - 1) as f64 * horizon / n as f64, k as f64 * horizon / n as f64);
        let prev = *out.last().expect("nonempty");
        let slope = f(b);
        let mid = f(0.5 * (a + b));
        for (at, before, after) in [(0.5 * (a + b), prev.slope, mid), (b, mid, slope)] {
            if after < before - 1e-9 * (1.0 + before.abs()) {
                return Err(OracleError::NotMonotone { at, before, after });
            }
        }
        let psi = prev.psi + integrate(&f, a, b, 1e-11 * (1.0 + slope.abs()));
        out.push(RayPoint { t: b, psi, slope });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{NamedRep, Representation};
    use crate::roots::RootDatum;

    fn su2_std_dual() -> MomentMap {
        let d = RootDatum::parse("su(2)").unwrap();
        MomentMap::new(&d, Representation::named(&d, &[NamedRep::Standard(0), NamedRep::Dual(0)]).unwrap())
    }

    #[test]
    fn trivial_rays() {
        let mm = su2_std_dual();
        let x = [C64::new(1.0, 0.0), C64::new(0.0, 0.5), C64::new(0.2, 0.0), C64::new(0.0, 0.0)];
        let r = kempf_ness_along_ray(&mm, &x, &[0.0, 0.0, 0.0], 5.0, 10).unwrap();
        assert!(r.iter().all(|p| p.psi == 0.0));
        let r = kempf_ness_along_ray(&mm, &[C64::new(0.0, 0.0); 4], &[1.0, 0.3, 0.0], 5.0, 10).unwrap();
        assert!(r.iter().all(|p| p.psi == 0.0));
    }

    #[test]
    fn psi_matches_closed_form() {
        // Torus direction on a single weight line: f(s) = -½ λ e^{-2sλ} |c|².
        let mm = su2_std_dual();
        let x = [C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)];
        let r = kempf_ness_along_ray(&mm, &x, &[1.0, 0.0, 0.0], 4.0, 8).unwrap();
        let l = std::f64::consts::FRAC_1_SQRT_2;
        for p in &r {
            let exact = 0.25 * ((-2.0 * p.t * l).exp() - 1.0);
            assert!((p.psi - exact).abs() < 1e-9, "{p:?} vs {exact}");
        }
        assert!(r.windows(2).all(|w| w[1].slope >= w[0].slope));
    }
}
