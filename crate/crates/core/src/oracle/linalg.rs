//! Small dense complex linear algebra: Hermitian Jacobi eigensolver and Haar unitaries.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type C64 = Complex64;

/// A dense square complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix { n, data: vec![C64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn diag_real(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = C64::new(x, 0.0);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(i, j)].conj())
    }

    pub fn add(&self, other: &Self) -> Self {
        CMatrix { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        CMatrix { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, s: C64) -> Self {
        CMatrix { n: self.n, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn add_scaled_in_place(&mut self, s: f64, other: &Self) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b * s;
        }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> C64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| (self[(i, j)] - self[(j, i)].conj()).norm() <= tol))
    }

    pub fn is_skew_hermitian(&self, tol: f64) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| (self[(i, j)] + self[(j, i)].conj()).norm() <= tol))
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self[(i, j)].norm() <= tol))
    }

    pub fn matvec(&self, v: &[C64]) -> Vec<C64> {
        let n = self.n;
        (0..n).map(|i| (0..n).map(|j| self.data[i * n + j] * v[j]).sum()).collect()
    }

    /// `v* A v`.
    pub fn quadratic_form(&self, v: &[C64]) -> C64 {
        dot(v, &self.matvec(v))
    }

    /// The principal submatrix on `range`.
    pub fn block(&self, range: std::ops::Range<usize>) -> Self {
        let off = range.start;
        Self::from_fn(range.len(), |i, j| self[(off + i, off + j)])
    }

    pub fn set_block(&mut self, offset: usize, b: &Self) {
        for i in 0..b.n {
            for j in 0..b.n {
                self[(offset + i, offset + j)] = b[(i, j)];
            }
        }
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.n + j]
    }
}

/// `a* b`.
pub fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(a: &[C64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Eigenvalues sorted in decreasing order.
    pub values: Vec<f64>,
    /// Unitary whose columns are the matching eigenvectors.
    pub vectors: CMatrix,
    pub sweeps: usize,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EigenError {
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("Jacobi iteration did not converge in {0} sweeps")]
    NoConvergence(usize),
}

/// Cyclic complex Jacobi iteration until the off-diagonal Frobenius norm is at most
/// `tol · ‖A‖_F`.
pub fn eigh_with_tol(a: &CMatrix, tol: f64) -> Result<HermitianEigen, EigenError> {
    let n = a.n;
    let scale = a.frobenius();
    if !a.is_hermitian(1e-9 * scale.max(1.0)) {
        return Err(EigenError::NotHermitian);
    }
    let mut m = a.clone();
    let mut v = CMatrix::identity(n);
    let off = |m: &CMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };
    let target = tol * scale;
    let max_sweeps = 60;
    let mut sweeps = 0;
    while off(&m) > target && scale > 0.0 {
        if sweeps == max_sweeps {
            return Err(EigenError::NoConvergence(max_sweeps));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let phase = apq / r;
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let theta = (aqq - app) / (2.0 * r);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // R = D·J with D = diag(1, conj(phase)) on (p, q).
                let rpp = C64::new(c, 0.0);
                let rpq = C64::new(s, 0.0);
                let rqp = -phase.conj() * s;
                let rqq = phase.conj() * c;
                for k in 0..n {
                    let (xp, xq) = (m[(k, p)], m[(k, q)]);
                    m[(k, p)] = xp * rpp + xq * rqp;
                    m[(k, q)] = xp * rpq + xq * rqq;
                }
                for k in 0..n {
                    let (xp, xq) = (m[(p, k)], m[(q, k)]);
                    m[(p, k)] = rpp.conj() * xp + rqp.conj() * xq;
                    m[(q, k)] = rpq.conj() * xp + rqq.conj() * xq;
                }
                m[(p, q)] = C64::new(0.0, 0.0);
                m[(q, p)] = C64::new(0.0, 0.0);
                m[(p, p)] = C64::new(m[(p, p)].re, 0.0);
                m[(q, q)] = C64::new(m[(q, q)].re, 0.0);
                for k in 0..n {
                    let (xp, xq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = xp * rpp + xq * rqp;
                    v[(k, q)] = xp * rpq + xq * rqq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].re.total_cmp(&m[(i, i)].re));
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    Ok(HermitianEigen { values, vectors, sweeps })
}

pub fn eigh(a: &CMatrix) -> Result<HermitianEigen, EigenError> {
    eigh_with_tol(a, 1e-12)
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases of
/// `diag(R)` moved into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut a = CMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            a[(i, j)] = C64::new(re * s, im * s);
        }
    }
    let (q, r) = householder_qr(&a);
    let mut out = q;
    for j in 0..n {
        let d = r[(j, j)];
        let ph = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..n {
            out[(i, j)] *= ph;
        }
    }
    out
}

/// Householder QR: `A = Q R` with `Q` unitary and `R` upper triangular.
pub fn householder_qr(a: &CMatrix) -> (CMatrix, CMatrix) {
    let n = a.n;
    let mut r = a.clone();
    let mut q = CMatrix::identity(n);
    for k in 0..n.saturating_sub(1) {
        let x: Vec<C64> = (k..n).map(|i| r[(i, k)]).collect();
        let xn = norm(&x);
        if xn == 0.0 {
            continue;
        }
        let ph = if x[0].norm() > 0.0 { x[0] / x[0].norm() } else { C64::new(1.0, 0.0) };
        let alpha = -ph * xn;
        let mut v = x.clone();
        v[0] -= alpha;
        let vn = norm(&v);
        if vn == 0.0 {
            continue;
        }
        for z in &mut v {
            *z /= vn;
        }
        // R <- H R, Q <- Q H with H = I - 2 v v*.
        for j in 0..n {
            let s: C64 = (k..n).map(|i| v[i - k].conj() * r[(i, j)]).sum();
            for i in k..n {
                r[(i, j)] -= v[i - k] * s * 2.0;
            }
        }
        for i in 0..n {
            let s: C64 = (k..n).map(|j| q[(i, j)] * v[j - k]).sum();
            for j in k..n {
                q[(i, j)] -= s * v[j - k].conj() * 2.0;
            }
        }
    }
    (q, r)
}

/// `exp(t·H)` for Hermitian `H`, through its eigendecomposition.
pub fn exp_hermitian(eig: &HermitianEigen, t: f64) -> CMatrix {
    let n = eig.values.len();
    let v = &eig.vectors;
    CMatrix::from_fn(n, |i, j| {
        (0..n).map(|k| v[(i, k)] * (t * eig.values[k]).exp() * v[(j, k)].conj()).sum()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
        let u = haar_unitary(n, rng);
        let d: Vec<f64> = (0..n).map(|i| i as f64 - 1.3).collect();
        u.mul(&CMatrix::diag_real(&d)).mul(&u.adjoint())
    }

    #[test]
    fn haar_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let u = haar_unitary(5, &mut rng);
        let e = u.mul(&u.adjoint()).sub(&CMatrix::identity(5));
        assert!(e.frobenius() < 1e-12);
    }

    #[test]
    fn jacobi_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 1..7 {
            let a = random_hermitian(n, &mut rng);
            let e = eigh(&a).unwrap();
            let rec = e.vectors.mul(&CMatrix::diag_real(&e.values)).mul(&e.vectors.adjoint());
            assert!(rec.sub(&a).frobenius() <= 1e-10 * a.frobenius().max(1.0));
            let tr: f64 = e.values.iter().sum();
            assert!((tr - a.trace().re).abs() < 1e-12 * n as f64);
            assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn jacobi_rejects_non_hermitian() {
        let mut a = CMatrix::zeros(2);
        a[(0, 1)] = C64::new(1.0, 0.0);
        assert_eq!(eigh(&a).unwrap_err(), EigenError::NotHermitian);
    }

    #[test]
    fn exp_of_diagonal() {
        let e = eigh(&CMatrix::diag_real(&[1.0, -2.0])).unwrap();
        let m = exp_hermitian(&e, 0.5);
        assert!((m[(0, 0)].re - 0.5f64.exp()).abs() < 1e-14);
        assert!((m[(1, 1)].re - (-1.0f64).exp()).abs() < 1e-14);
    }
}
