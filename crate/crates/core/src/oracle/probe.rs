//! Numerical properness probe: `min ‖Φ_V(v)‖` over the unit sphere of `V`.

use super::linalg::{norm, C64};
use super::MomentMap;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// Projected descent of `½‖Φ_V‖²` on the unit sphere from `starts` random points.
pub fn min_moment_norm_on_sphere(mm: &MomentMap, starts: usize, seed: u64) -> f64 {
    let dim = mm.dim_v();
    if dim == 0 {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    for k in 0..starts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k as u64);
        let mut v: Vec<C64> = (0..dim)
            .map(|_| {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                C64::new(re, im)
            })
            .collect();
        normalize(&mut v);
        let mut val = mm.norm_sq(&mm.phi_v(&v));
        let mut h = 1.0;
        for _ in 0..4000 {
            let phi = mm.phi_v(&v);
            let kappa = mm.kirwan(&v, &phi);
            let mut d: Vec<C64> = kappa.iter().map(|z| z * C64::new(0.0, -1.0)).collect();
            let radial = MomentMap::real_inner(&v, &d);
            for (di, vi) in d.iter_mut().zip(&v) {
                *di -= vi * radial;
            }
            if norm(&d) < 1e-14 {
                break;
            }
            loop {
                let mut w: Vec<C64> = v.iter().zip(&d).map(|(a, b)| a + b * h).collect();
                normalize(&mut w);
                let nv = mm.norm_sq(&mm.phi_v(&w));
                if nv < val {
                    v = w;
                    val = nv;
                    h = (h * 1.5).min(1e3);
                    break;
                }
                h *= 0.5;
                if h < 1e-12 {
                    break;
                }
            }
            if h < 1e-12 || val < 1e-16 {
                break;
            }
        }
        best = best.min(val.sqrt());
    }
    best
}

fn normalize(v: &mut [C64]) {
    let n = norm(v);
    for z in v.iter_mut() {
        *z /= n;
    }
}
