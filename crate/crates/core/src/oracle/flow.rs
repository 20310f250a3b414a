//! Gradient flow of `f = ½‖Φ‖²` on `V`: `x' = -i dρ(Φ(x)^♯) x`.

use super::linalg::{norm, C64};
use super::MomentMap;

/// Stop once `‖κ_Φ‖` is at most this.
pub const FLOW_TOL: f64 = 1e-8;
/// `‖Φ‖` at the limit below which a point counts as numerically semistable.
pub const SEMISTABLE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct FlowOptions {
    pub tolerance: f64,
    pub max_steps: usize,
    /// Local error tolerance, relative to `1 + ‖x‖`.
    pub step_tol: f64,
}

impl Default for FlowOptions {
    fn default() -> Self {
        FlowOptions { tolerance: FLOW_TOL, max_steps: 200_000, step_tol: 1e-10 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlowState {
    pub v: Vec<C64>,
    pub time: f64,
    pub phi: Vec<f64>,
    /// `‖Φ(v)‖`.
    pub norm: f64,
    pub kirwan_norm: f64,
    pub steps: usize,
    pub rejected: usize,
    /// `false` when the step budget ran out first.
    pub converged: bool,
    /// `f` after every accepted step, starting with the initial value.
    pub f_history: Vec<f64>,
}

impl FlowState {
    pub fn is_semistable(&self) -> bool {
        self.converged && self.norm <= SEMISTABLE_TOL
    }
}

fn rhs(mm: &MomentMap, x: &[C64]) -> Vec<C64> {
    let phi = mm.phi(x);
    mm.hermitian_action(&mm.sharp(&phi)).matvec(x)
}

fn axpy(x: &[C64], h: f64, terms: &[(f64, &[C64])]) -> Vec<C64> {
    let mut out = x.to_vec();
    for (c, k) in terms {
        for (o, z) in out.iter_mut().zip(k.iter()) {
            *o += z * (h * c);
        }
    }
    out
}

/// Bogacki–Shampine 3(2) with step rejection whenever `f` would increase.
pub fn gradient_flow(mm: &MomentMap, v0: &[C64], options: &FlowOptions) -> FlowState {
    let f = |x: &[C64]| 0.5 * mm.norm_sq(&mm.phi(x));
    let mut x = v0.to_vec();
    let mut fx = f(&x);
    let mut k1 = rhs(mm, &x);
    let mut time = 0.0;
    let mut steps = 0;
    let mut rejected = 0;
    let mut history = vec![fx];
    let mut h = 0.1 / (1.0 + norm(&k1));
    let mut converged = false;
    while steps + rejected < options.max_steps {
        let kappa = mm.kirwan(&x, &mm.phi(&x));
        if norm(&kappa) <= options.tolerance {
            converged = true;
            break;
        }
        let k2 = rhs(mm, &axpy(&x, h, &[(0.5, &k1)]));
        let k3 = rhs(mm, &axpy(&x, h, &[(0.75, &k2)]));
        let xn = axpy(&x, h, &[(2.0 / 9.0, &k1), (1.0 / 3.0, &k2), (4.0 / 9.0, &k3)]);
        let k4 = rhs(mm, &xn);
        let z = axpy(&x, h, &[(7.0 / 24.0, &k1), (0.25, &k2), (1.0 / 3.0, &k3), (0.125, &k4)]);
        let err = xn.iter().zip(&z).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
        let tol = options.step_tol * (1.0 + norm(&x));
        let fn_ = f(&xn);
        let factor = if err > 0.0 { (0.9 * (tol / err).cbrt()).clamp(0.2, 5.0) } else { 5.0 };
        if err <= tol && fn_ <= fx {
            x = xn;
            fx = fn_;
            k1 = k4;
            time += h;
            steps += 1;
            history.push(fx);
            h *= factor;
        } else {
            rejected += 1;
            h *= factor.min(0.5);
            if h < 1e-300 {
                break;
            }
        }
    }
    let phi = mm.phi(&x);
    let kirwan_norm = norm(&mm.kirwan(&x, &phi));
    FlowState {
        norm: mm.norm_sq(&phi).sqrt(),
        phi,
        v: x,
        time,
        kirwan_norm,
        steps,
        rejected,
        converged,
        f_history: history,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{NamedRep, Representation};
    use crate::roots::RootDatum;

    fn u2_two_copies() -> MomentMap {
        let d = RootDatum::parse("u(2)").unwrap();
        let rep = Representation::named(&d, &[NamedRep::Standard(0), NamedRep::Standard(0)]).unwrap();
        MomentMap::new(&d, rep).with_shift(&d, &[1.0, 1.0]).unwrap()
    }

    #[test]
    fn zero_is_fixed() {
        let d = RootDatum::parse("su(2)").unwrap();
        let mm = MomentMap::new(&d, Representation::named(&d, &[NamedRep::Standard(0)]).unwrap());
        let s = gradient_flow(&mm, &[C64::new(0.0, 0.0); 2], &FlowOptions::default());
        assert!(s.converged);
        assert_eq!(s.steps, 0);
    }

    #[test]
    fn generic_point_reaches_zero() {
        let mm = u2_two_copies();
        let v = [C64::new(0.3, 0.1), C64::new(-0.2, 0.0), C64::new(0.1, 0.4), C64::new(0.5, -0.3)];
        let s = gradient_flow(&mm, &v, &FlowOptions::default());
        assert!(s.is_semistable(), "{s:?}");
        assert!(s.f_history.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn singular_point_is_unstable() {
        let mm = u2_two_copies();
        let v = [C64::new(0.3, 0.0), C64::new(0.6, 0.0), C64::new(0.1, 0.0), C64::new(0.2, 0.0)];
        let s = gradient_flow(&mm, &v, &FlowOptions::default());
        assert!(s.converged);
        assert!(!s.is_semistable());
        assert!((s.norm - 1.0).abs() < 1e-6);
    }
}
