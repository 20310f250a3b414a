//! Lie algebra bases in the defining representation, representations on `V`,
//! and the moment map `Φ_V`.

use super::linalg::{dot, CMatrix, C64};
use super::OracleError;
use crate::roots::{FactorKind, RootDatum, Weight};

/// One element `X_a = i·H_a` of an orthonormal basis of `k`, orthonormal for
/// `-tr(XY)`. `H_a` is Hermitian on the defining representation `C^N`.
#[derive(Debug, Clone)]
pub struct BasisElement {
    pub hermitian: CMatrix,
    pub factor: usize,
    /// Diagonal element, i.e. in `t`.
    pub cartan: bool,
}

/// Canonical orthonormal basis of `k`: per factor, Cartan elements first, then for
/// each pair `j < k` the symmetric and antisymmetric off-diagonal elements.
pub fn lie_basis(datum: &RootDatum) -> Vec<BasisElement> {
    let n = datum.ambient_dim();
    let r2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = Vec::new();
    for (fi, f) in datum.factors().iter().enumerate() {
        let off = f.offset;
        match f.kind {
            FactorKind::Su => {
                for m in 1..f.size {
                    let norm = ((m * (m + 1)) as f64).sqrt();
                    let mut d = vec![0.0; n];
                    for x in &mut d[off..off + m] {
                        *x = 1.0 / norm;
                    }
                    d[off + m] = -(m as f64) / norm;
                    out.push(BasisElement { hermitian: CMatrix::diag_real(&d), factor: fi, cartan: true });
                }
            }
            FactorKind::U | FactorKind::Torus => {
                for j in 0..f.size {
                    let mut d = vec![0.0; n];
                    d[off + j] = 1.0;
                    out.push(BasisElement { hermitian: CMatrix::diag_real(&d), factor: fi, cartan: true });
                }
            }
        }
        if f.has_roots() {
            for j in 0..f.size {
                for k in j + 1..f.size {
                    let (a, b) = (off + j, off + k);
                    let mut s = CMatrix::zeros(n);
                    s[(a, b)] = C64::new(r2, 0.0);
                    s[(b, a)] = C64::new(r2, 0.0);
                    out.push(BasisElement { hermitian: s, factor: fi, cartan: false });
                    let mut t = CMatrix::zeros(n);
                    t[(a, b)] = C64::new(0.0, -r2);
                    t[(b, a)] = C64::new(0.0, r2);
                    out.push(BasisElement { hermitian: t, factor: fi, cartan: false });
                }
            }
        }
    }
    out
}

/// Coordinates of a Hermitian matrix on the defining representation in the basis,
/// i.e. its orthogonal projection onto `k*`.
pub fn coordinates(basis: &[BasisElement], h: &CMatrix) -> Vec<f64> {
    basis.iter().map(|b| h.mul(&b.hermitian).trace().re).collect()
}

/// `Σ_a c_a H_a`.
pub fn hermitian_from(basis: &[BasisElement], coords: &[f64]) -> CMatrix {
    let n = basis.first().map_or(0, |b| b.hermitian.n());
    let mut m = CMatrix::zeros(n);
    for (b, &c) in basis.iter().zip(coords) {
        m.add_scaled_in_place(c, &b.hermitian);
    }
    m
}

/// `dρ(X_a)` for every basis element of `k`, acting on `V = C^d`.
#[derive(Debug, Clone)]
pub struct Representation {
    dim: usize,
    generators: Vec<CMatrix>,
}

/// A building block of `V` from the defining representation of one factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedRep {
    Standard(usize),
    Dual(usize),
}

impl Representation {
    pub fn from_generators(datum: &RootDatum, generators: Vec<CMatrix>) -> Result<Self, OracleError> {
        let basis = lie_basis(datum);
        if generators.len() != basis.len() {
            return Err(OracleError::Representation(format!(
                "expected {} generator matrices, got {}",
                basis.len(),
                generators.len()
            )));
        }
        let dim = generators.first().map_or(0, CMatrix::n);
        for (a, g) in generators.iter().enumerate() {
            if g.n() != dim {
                return Err(OracleError::Representation(format!("generator {a} has the wrong size")));
            }
            if !g.is_skew_hermitian(1e-9) {
                return Err(OracleError::Representation(format!("generator {a} is not skew-Hermitian")));
            }
            if basis[a].cartan && !g.is_diagonal(1e-9) {
                return Err(OracleError::Representation(format!(
                    "generator {a} spans the torus but is not diagonal"
                )));
            }
        }
        let rep = Representation { dim, generators };
        rep.check_brackets(&basis)?;
        Ok(rep)
    }

    /// `dρ([X_a, X_b]) = [dρ(X_a), dρ(X_b)]` for all pairs.
    fn check_brackets(&self, basis: &[BasisElement]) -> Result<(), OracleError> {
        let xs: Vec<CMatrix> = basis.iter().map(|b| b.hermitian.scale(C64::new(0.0, 1.0))).collect();
        for a in 0..xs.len() {
            for b in a + 1..xs.len() {
                let br = xs[a].commutator(&xs[b]);
                let herm = br.scale(C64::new(0.0, -1.0));
                let c = coordinates(basis, &herm);
                let mut image = CMatrix::zeros(self.dim);
                for (g, &k) in self.generators.iter().zip(&c) {
                    image.add_scaled_in_place(k, g);
                }
                let lhs = self.generators[a].commutator(&self.generators[b]);
                if lhs.sub(&image).max_abs() > 1e-8 {
                    return Err(OracleError::Representation(format!(
                        "generators {a} and {b} violate the bracket relation"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Direct sum of defining representations of single factors and their duals.
    pub fn named(datum: &RootDatum, parts: &[NamedRep]) -> Result<Self, OracleError> {
        let basis = lie_basis(datum);
        let mut blocks: Vec<Vec<CMatrix>> = Vec::new();
        for &p in parts {
            let (fi, dual) = match p {
                NamedRep::Standard(f) => (f, false),
                NamedRep::Dual(f) => (f, true),
            };
            let f = datum
                .factors()
                .get(fi)
                .ok_or_else(|| OracleError::Representation(format!("no factor {fi}")))?;
            blocks.push(
                basis
                    .iter()
                    .map(|b| {
                        let x = b.hermitian.block(f.range()).scale(C64::new(0.0, 1.0));
                        if dual { x.conj() } else { x }
                    })
                    .collect(),
            );
        }
        let dim: usize = blocks.iter().map(|b| b.first().map_or(0, CMatrix::n)).sum();
        let generators = (0..basis.len())
            .map(|a| {
                let mut g = CMatrix::zeros(dim);
                let mut off = 0;
                for b in &blocks {
                    g.set_block(off, &b[a]);
                    off += b[a].n();
                }
                g
            })
            .collect();
        Ok(Representation { dim, generators })
    }

    /// Torus weights of the (diagonal) Cartan action, in ambient coordinates.
    pub fn weights(&self, datum: &RootDatum) -> Vec<Vec<f64>> {
        let basis = lie_basis(datum);
        let n = datum.ambient_dim();
        (0..self.dim)
            .map(|j| {
                let mut w = vec![0.0; n];
                for (b, g) in basis.iter().zip(&self.generators).filter(|(b, _)| b.cartan) {
                    let eig = g[(j, j)].im;
                    for (i, wi) in w.iter_mut().enumerate() {
                        *wi += eig * b.hermitian[(i, i)].re;
                    }
                }
                w
            })
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[CMatrix] {
        &self.generators
    }

    /// `dρ(X)` for `X = Σ_a c_a X_a`.
    pub fn action(&self, coords: &[f64]) -> CMatrix {
        let mut m = CMatrix::zeros(self.dim);
        for (g, &c) in self.generators.iter().zip(coords) {
            m.add_scaled_in_place(c, g);
        }
        m
    }
}

/// Checks that the weights read off a representation agree with a declared weight list.
pub fn weights_match(datum: &RootDatum, rep: &Representation, declared: &[Weight]) -> bool {
    if rep.dim() != declared.len() {
        return false;
    }
    let key = |w: &[f64]| -> Vec<i64> { w.iter().map(|x| (x * 1e6).round() as i64).collect() };
    let mut got: Vec<Vec<i64>> = rep.weights(datum).iter().map(|w| key(w)).collect();
    let mut want: Vec<Vec<i64>> = declared.iter().map(|w| key(&datum.project(w).to_f64())).collect();
    got.sort();
    want.sort();
    got == want
}

/// The moment map `Φ(v) = Φ_V(v) + ζ` with `⟨Φ_V(v), X⟩ = -½ Im(v* dρ(X) v)` and a
/// central shift `ζ`, in coordinates of the orthonormal basis.
#[derive(Debug, Clone)]
pub struct MomentMap {
    basis: Vec<BasisElement>,
    rep: Representation,
    shift: Vec<f64>,
    /// Form scale of the factor of each basis element.
    scales: Vec<f64>,
}

impl MomentMap {
    pub fn new(datum: &RootDatum, rep: Representation) -> Self {
        let basis = lie_basis(datum);
        let scales = basis.iter().map(|b| datum.form().scales()[b.factor] as f64).collect();
        let shift = vec![0.0; basis.len()];
        MomentMap { basis, rep, shift, scales }
    }

    /// Adds a central shift given in ambient `t*` coordinates.
    pub fn with_shift(mut self, datum: &RootDatum, zeta: &[f64]) -> Result<Self, OracleError> {
        if zeta.len() != datum.ambient_dim() {
            return Err(OracleError::Shift("wrong number of coordinates".into()));
        }
        for f in datum.factors() {
            let vals = &zeta[f.range()];
            match f.kind {
                FactorKind::Su if vals.iter().any(|x| x.abs() > 0.0) => {
                    return Err(OracleError::Shift(format!("{f} has no center; the shift must vanish there")));
                }
                FactorKind::U if vals.iter().any(|x| (x - vals[0]).abs() > 0.0) => {
                    return Err(OracleError::Shift(format!("shift on {f} must be a multiple of the identity")));
                }
                _ => {}
            }
        }
        self.shift = coordinates(&self.basis, &CMatrix::diag_real(zeta));
        Ok(self)
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn representation(&self) -> &Representation {
        &self.rep
    }

    pub fn dim_v(&self) -> usize {
        self.rep.dim()
    }

    /// `Φ_V(v)` without the shift.
    pub fn phi_v(&self, v: &[C64]) -> Vec<f64> {
        self.rep.generators.iter().map(|g| -0.5 * g.quadratic_form(v).im).collect()
    }

    pub fn phi(&self, v: &[C64]) -> Vec<f64> {
        self.phi_v(v).iter().zip(&self.shift).map(|(a, b)| a + b).collect()
    }

    /// `‖φ‖²` for the invariant form.
    pub fn norm_sq(&self, phi: &[f64]) -> f64 {
        phi.iter().zip(&self.scales).map(|(p, s)| p * p / s).sum()
    }

    /// `Φ^♯` in basis coordinates.
    pub fn sharp(&self, phi: &[f64]) -> Vec<f64> {
        phi.iter().zip(&self.scales).map(|(p, s)| p / s).collect()
    }

    /// Kirwan vector `κ_Φ(v) = dρ(Φ(v)^♯) v`.
    pub fn kirwan(&self, v: &[C64], phi: &[f64]) -> Vec<C64> {
        self.rep.action(&self.sharp(phi)).matvec(v)
    }

    /// `Φ` as a Hermitian matrix on the defining representation.
    pub fn hermitian(&self, phi: &[f64]) -> CMatrix {
        hermitian_from(&self.basis, phi)
    }

    /// Basis coordinates of the element `i·diag(γ)` of `t`.
    pub fn torus_coords(&self, gamma: &[f64]) -> Vec<f64> {
        coordinates(&self.basis, &CMatrix::diag_real(gamma))
    }

    /// Natural pairing `⟨φ, X⟩` of basis coordinates.
    pub fn pair(phi: &[f64], x: &[f64]) -> f64 {
        phi.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    /// `Hρ(X) = -i dρ(X)`.
    pub fn hermitian_action(&self, x: &[f64]) -> CMatrix {
        self.rep.action(x).scale(C64::new(0.0, -1.0))
    }

    pub fn real_inner(a: &[C64], b: &[C64]) -> f64 {
        dot(a, b).re
    }
}
