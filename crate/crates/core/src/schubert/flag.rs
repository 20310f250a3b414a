use super::poly::{BorelPolynomial, SchubertPolynomials};
use super::SchubertError;
use crate::exact::Rational;
use crate::roots::{Coweight, RootDatum, WeightedModule, WeylElement};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Identifies a flag variety up to isomorphism: block layout plus parabolic subset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlagKey {
    blocks: Vec<(usize, usize)>,
    parabolic: Vec<usize>,
}

/// Integer combination of Schubert classes `σ^w`, `w` minimal in `w W_J`.
#[derive(Clone, PartialEq, Eq)]
pub struct CohomologyClass {
    key: FlagKey,
    coeffs: BTreeMap<WeylElement, BigInt>,
}

impl CohomologyClass {
    pub fn coefficients(&self) -> impl Iterator<Item = (&WeylElement, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, w: &WeylElement) -> BigInt {
        self.coeffs.get(w).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Codimensions of the Schubert classes that occur.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.coeffs.keys().map(WeylElement::length).collect();
        d.dedup();
        d
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }
}

impl fmt::Debug for CohomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·σ{w}")?;
        }
        Ok(())
    }
}

/// The partial flag variety `F_γ = K_C / P_γ` in the Schubert basis.
///
/// `F_γ` is identified with `G/P_J` for the standard parabolic `P_J ⊇ B` of the
/// antidominant representative `γ⁻ = uγ`. Classes are indexed by minimal coset
/// representatives of `W/W_J`; `σ^w` has codimension `ℓ(w)`.
#[derive(Debug)]
pub struct FlagVariety {
    datum: RootDatum,
    gamma: Coweight,
    dominant: Coweight,
    dominant_stabilizer: Vec<usize>,
    conjugator: WeylElement,
    to_antidominant: WeylElement,
    key: FlagKey,
    basis: Vec<WeylElement>,
    polynomials: BTreeMap<WeylElement, BorelPolynomial>,
    point: WeylElement,
    dim: usize,
}

impl FlagVariety {
    pub fn new(datum: &RootDatum, gamma: &Coweight) -> Result<Self, SchubertError> {
        datum.check_in_t(gamma)?;
        if gamma.is_zero() {
            return Err(SchubertError::ZeroGamma);
        }
        let conjugator = datum.sorting_element(gamma, false);
        let dominant = conjugator.apply(gamma);
        let to_antidominant = datum.sorting_element(gamma, true);
        let antidominant = to_antidominant.apply(gamma);
        let flat = |v: &Coweight| -> Vec<usize> {
            datum
                .simple_positions()
                .iter()
                .copied()
                .filter(|&i| v.coords()[i] == v.coords()[i + 1])
                .collect()
        };
        let dominant_stabilizer = flat(&dominant);
        let parabolic = flat(&antidominant);
        let blocks: Vec<(usize, usize)> = datum
            .factors()
            .iter()
            .filter(|f| f.has_roots())
            .map(|f| (f.offset, f.size))
            .collect();
        let key = FlagKey { blocks: blocks.clone(), parabolic };
        let basis = datum.minimal_coset_reps(&antidominant);
        let mut table = SchubertPolynomials::new(datum.ambient_dim(), blocks);
        let polynomials = basis.iter().map(|w| (w.clone(), table.get(w))).collect();
        let point = basis.iter().max_by_key(|w| w.length()).cloned().expect("nonempty basis");
        let dim = point.length();
        debug_assert_eq!(dim, {
            let (p, _, n) = datum.root_signs(gamma);
            p + n
        });
        Ok(FlagVariety {
            datum: datum.clone(),
            gamma: gamma.clone(),
            dominant,
            dominant_stabilizer,
            conjugator,
            to_antidominant,
            key,
            basis,
            polynomials,
            point,
            dim,
        })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn gamma(&self) -> &Coweight {
        &self.gamma
    }

    /// `γ⁺ = vγ`.
    pub fn dominant(&self) -> &Coweight {
        &self.dominant
    }

    /// Positions of the simple roots vanishing on `γ⁺`.
    pub fn dominant_stabilizer(&self) -> &[usize] {
        &self.dominant_stabilizer
    }

    /// Minimal `v` with `vγ = γ⁺`.
    pub fn conjugator(&self) -> &WeylElement {
        &self.conjugator
    }

    /// Minimal `u` with `uγ` antidominant; transports `P_γ` to the standard parabolic.
    pub fn to_antidominant(&self) -> &WeylElement {
        &self.to_antidominant
    }

    /// Positions of the simple roots in `J`.
    pub fn parabolic(&self) -> &[usize] {
        &self.key.parabolic
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[WeylElement] {
        &self.basis
    }

    pub fn key(&self) -> &FlagKey {
        &self.key
    }

    /// Minimal representative of `x W_J`: values sorted ascending within each `J`-run.
    pub fn min_rep(&self, x: &WeylElement) -> WeylElement {
        let mut perm = x.perm().to_vec();
        let n = perm.len();
        let mut start = 0;
        while start < n {
            let mut end = start + 1;
            while end < n && self.key.parabolic.contains(&(end - 1)) {
                end += 1;
            }
            perm[start..end].sort_unstable();
            start = end;
        }
        WeylElement::from_perm(perm)
    }

    fn class_from(&self, coeffs: BTreeMap<WeylElement, BigInt>) -> CohomologyClass {
        CohomologyClass { key: self.key.clone(), coeffs }
    }

    pub fn zero(&self) -> CohomologyClass {
        self.class_from(BTreeMap::new())
    }

    pub fn unit(&self) -> CohomologyClass {
        self.schubert_class(&self.datum.identity()).expect("identity is a basis element")
    }

    pub fn point_class(&self) -> CohomologyClass {
        self.schubert_class(&self.point).expect("point is a basis element")
    }

    pub fn point_index(&self) -> &WeylElement {
        &self.point
    }

    /// `σ^w` for `w` in the basis.
    pub fn schubert_class(&self, w: &WeylElement) -> Result<CohomologyClass, SchubertError> {
        if !self.polynomials.contains_key(w) {
            return Err(SchubertError::NotMinimal(w.to_string()));
        }
        Ok(self.class_from(BTreeMap::from([(w.clone(), BigInt::one())])))
    }

    /// Class of the `B`-orbit closure of `x P_J` in `G/P_J`: `σ^{min(w₀ x W_J)}`.
    fn orbit_closure_class(&self, x: &WeylElement) -> CohomologyClass {
        let y = self.min_rep(&self.datum.longest_element().compose(x));
        self.schubert_class(&y).expect("minimal representative")
    }

    /// Class of `X_γ`, the closure of `B·[e]` in `F_γ`.
    pub fn class_of_x_gamma(&self) -> CohomologyClass {
        self.orbit_closure_class(&self.to_antidominant.inverse())
    }

    /// Class of the closure of `B·[w]` in `F_γ`, for any `w ∈ W`.
    pub fn class_of_orbit(&self, w: &WeylElement) -> CohomologyClass {
        self.orbit_closure_class(&w.compose(&self.to_antidominant.inverse()))
    }

    fn check(&self, c: &CohomologyClass) -> Result<(), SchubertError> {
        if c.key != self.key {
            return Err(SchubertError::MismatchedFlag);
        }
        Ok(())
    }

    pub fn to_polynomial(&self, c: &CohomologyClass) -> Result<BorelPolynomial, SchubertError> {
        self.check(c)?;
        let mut p = BorelPolynomial::zero(self.datum.ambient_dim());
        for (w, k) in &c.coeffs {
            p = p.add(&self.polynomials[w].scaled(&Rational::from_integer(k.clone())));
        }
        Ok(p)
    }

    /// Expands a polynomial pulled back from `G/P_J` in the Schubert basis.
    pub fn expand(&self, p: &BorelPolynomial) -> Result<CohomologyClass, SchubertError> {
        let mut coeffs = BTreeMap::new();
        for w in &self.basis {
            if w.length() > self.dim {
                continue;
            }
            let c = p.schubert_coefficient(w);
            if c.is_zero() {
                continue;
            }
            if !c.is_integer() {
                return Err(SchubertError::NonIntegral { class: w.to_string(), value: c.to_string() });
            }
            coeffs.insert(w.clone(), c.to_integer());
        }
        Ok(self.class_from(coeffs))
    }

    pub fn cup(&self, a: &CohomologyClass, b: &CohomologyClass) -> Result<CohomologyClass, SchubertError> {
        let p = self.to_polynomial(a)?.mul(&self.to_polynomial(b)?);
        self.expand(&p)
    }

    /// `ι*` for the diagonal `F ↪ F^s`: the cup product of all factors.
    pub fn pullback_diagonal(&self, classes: &[CohomologyClass]) -> Result<CohomologyClass, SchubertError> {
        let mut p = BorelPolynomial::one(self.datum.ambient_dim());
        for c in classes {
            p = p.mul(&self.to_polynomial(c)?);
        }
        self.expand(&p)
    }

    /// Euler class of the homogeneous bundle with fibre the `γ>0` piece `vpos`.
    ///
    /// Weights are given in the frame of `γ`; they are transported by `u` internally.
    pub fn euler_polynomial(&self, vpos: &WeightedModule) -> Result<BorelPolynomial, SchubertError> {
        let n = self.datum.ambient_dim();
        let mut p = BorelPolynomial::one(n);
        for (w, mult) in vpos.iter() {
            if w.len() != n {
                return Err(SchubertError::WeightFrame { expected: n, got: w.len() });
            }
            let c1 = BorelPolynomial::chern_class(&self.to_antidominant.apply(w));
            for _ in 0..mult {
                p = p.mul(&c1);
            }
        }
        Ok(p)
    }

    pub fn euler_class(&self, vpos: &WeightedModule) -> Result<CohomologyClass, SchubertError> {
        self.expand(&self.euler_polynomial(vpos)?)
    }

    pub fn point_coefficient(&self, c: &CohomologyClass) -> Result<BigInt, SchubertError> {
        self.check(c)?;
        Ok(c.coefficient(&self.point))
    }

    /// Top coefficient of a polynomial without expanding the rest.
    pub fn point_coefficient_of(&self, p: &BorelPolynomial) -> Result<BigInt, SchubertError> {
        let c = p.schubert_coefficient(&self.point);
        if !c.is_integer() {
            return Err(SchubertError::NonIntegral { class: self.point.to_string(), value: c.to_string() });
        }
        Ok(c.to_integer())
    }

    /// `Σ_{w ∈ W^J} q^{ℓ(w)}` as a coefficient list.
    pub fn poincare_polynomial(&self) -> Vec<u64> {
        let mut coeffs = vec![0u64; self.dim + 1];
        for w in &self.basis {
            coeffs[w.length()] += 1;
        }
        coeffs
    }

    /// The basis element `u∨` with `σ^u · σ^{u∨} = [pt]`: `min(w₀ u W_J)`.
    pub fn dual_index(&self, u: &WeylElement) -> WeylElement {
        self.min_rep(&self.datum.longest_element().compose(u))
    }
}
