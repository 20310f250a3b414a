use crate::exact::Rational;
use crate::roots::{WeylElement, Weight};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};

/// A polynomial in the Chern roots `x_0, …, x_{N-1}` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BorelPolynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u16>, Rational>,
}

impl BorelPolynomial {
    pub fn zero(nvars: usize) -> Self {
        BorelPolynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(nvars, vec![0; nvars], Rational::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<u16>, coeff: Rational) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, Rational::one())
    }

    /// `Σ c_i x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; n];
                e[i] = 1;
                p.terms.insert(e, c.clone());
            }
        }
        p
    }

    /// First Chern class of the line bundle of weight `μ`: `-Σ μ_j x_j`.
    pub fn chern_class(weight: &Weight) -> Self {
        let c: Vec<Rational> = weight.coords().iter().map(|x| -x).collect();
        Self::linear(&c)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u16], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.iter().map(|&x| x as usize).sum()).max()
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&vec![0; self.nvars]).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, exps: Vec<u16>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn scaled(&self, q: &Rational) -> Self {
        let mut p = Self::zero(self.nvars);
        if !q.is_zero() {
            p.terms = self.terms.iter().map(|(e, c)| (e.clone(), c * q)).collect();
        }
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut p = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u16> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1 * c2);
            }
        }
        p
    }

    /// Keeps only the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: usize) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e.iter().map(|&x| x as usize).sum::<usize>() == d {
                p.terms.insert(e.clone(), c.clone());
            }
        }
        p
    }

    /// Divided difference `∂_i f = (f - s_i f)/(x_i - x_{i+1})`.
    pub fn divided_difference(&self, i: usize) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let (a, b) = (e[i], e[i + 1]);
            if a == b {
                continue;
            }
            let (hi, lo, sign) = if a > b { (a, b, c.clone()) } else { (b, a, -c.clone()) };
            for k in 0..hi - lo {
                let mut f = e.clone();
                f[i] = lo + (hi - lo - 1 - k);
                f[i + 1] = lo + k;
                p.add_term(f, sign.clone());
            }
        }
        p
    }

    /// `(∂_w f)(0)`: the coefficient of the Schubert polynomial `𝔖_w` in `f`.
    pub fn schubert_coefficient(&self, w: &WeylElement) -> Rational {
        let mut f = self.clone();
        let mut w = w.clone();
        let target = w.length();
        f = f.homogeneous_part(target);
        while let Some(i) = (0..w.degree().saturating_sub(1)).find(|&i| w.has_right_descent(i)) {
            f = f.divided_difference(i);
            if f.is_zero() {
                return Rational::zero();
            }
            w = w.compose(&WeylElement::simple(w.degree(), i));
        }
        f.constant_term()
    }
}

/// Memoized Schubert polynomials of block-preserving permutations.
///
/// `blocks` lists the `(offset, size)` ranges permuted by the Weyl group.
#[derive(Debug)]
pub struct SchubertPolynomials {
    nvars: usize,
    blocks: Vec<(usize, usize)>,
    cache: HashMap<Vec<usize>, BorelPolynomial>,
}

impl SchubertPolynomials {
    pub fn new(nvars: usize, blocks: Vec<(usize, usize)>) -> Self {
        SchubertPolynomials { nvars, blocks, cache: HashMap::new() }
    }

    pub fn get(&mut self, w: &WeylElement) -> BorelPolynomial {
        let mut p = BorelPolynomial::one(self.nvars);
        for &(off, size) in &self.blocks.clone() {
            let local: Vec<usize> = w.perm()[off..off + size].iter().map(|&x| x - off).collect();
            let q = self.block_poly(&local);
            p = p.mul(&shift(&q, off, self.nvars));
        }
        p
    }

    fn block_poly(&mut self, w: &[usize]) -> BorelPolynomial {
        if let Some(p) = self.cache.get(w) {
            return p.clone();
        }
        let n = w.len();
        let p = match (0..n.saturating_sub(1)).find(|&i| w[i] < w[i + 1]) {
            None => {
                let exps: Vec<u16> = (0..n).map(|i| (n - 1 - i) as u16).collect();
                BorelPolynomial::monomial(n, exps, Rational::one())
            }
            Some(i) => {
                let mut up = w.to_vec();
                up.swap(i, i + 1);
                self.block_poly(&up).divided_difference(i)
            }
        };
        self.cache.insert(w.to_vec(), p.clone());
        p
    }
}

fn shift(p: &BorelPolynomial, offset: usize, nvars: usize) -> BorelPolynomial {
    let mut out = BorelPolynomial::zero(nvars);
    for (e, c) in p.terms() {
        let mut f = vec![0; nvars];
        f[offset..offset + e.len()].copy_from_slice(e);
        out.add_term(f, c.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn x(n: usize, i: usize) -> BorelPolynomial {
        BorelPolynomial::variable(n, i)
    }

    #[test]
    fn divided_difference_basics() {
        let n = 2;
        assert_eq!(x(n, 0).divided_difference(0), BorelPolynomial::one(n));
        assert_eq!(x(n, 1).divided_difference(0), BorelPolynomial::one(n).scaled(&int(-1)));
        let sq = x(n, 0).mul(&x(n, 0));
        assert_eq!(sq.divided_difference(0), x(n, 0).add(&x(n, 1)));
        let sym = x(n, 0).mul(&x(n, 1));
        assert!(sym.divided_difference(0).is_zero());
    }

    #[test]
    fn small_schubert_polynomials() {
        let mut sp = SchubertPolynomials::new(3, vec![(0, 3)]);
        let s = |v: Vec<usize>| WeylElement::from_perm(v);
        assert_eq!(sp.get(&s(vec![0, 1, 2])), BorelPolynomial::one(3));
        assert_eq!(sp.get(&s(vec![1, 0, 2])), x(3, 0));
        assert_eq!(sp.get(&s(vec![0, 2, 1])), x(3, 0).add(&x(3, 1)));
        assert_eq!(sp.get(&s(vec![2, 0, 1])), x(3, 0).mul(&x(3, 0)));
        assert_eq!(sp.get(&s(vec![1, 2, 0])), x(3, 0).mul(&x(3, 1)));
    }

    #[test]
    fn coefficient_extraction_recovers_basis() {
        let mut sp = SchubertPolynomials::new(3, vec![(0, 3)]);
        let all: Vec<WeylElement> = crate::roots::RootDatum::parse("su(3)").unwrap().weyl_group();
        for u in &all {
            let p = sp.get(u);
            for w in &all {
                let c = p.schubert_coefficient(w);
                assert_eq!(c, if u == w { int(1) } else { int(0) }, "{u} {w}");
            }
        }
    }
}
