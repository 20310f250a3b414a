//! Type-A root data with torus factors, Weyl groups and graded weight modules.

mod module;
mod vector;
mod weyl;

pub use module::{GradedPieces, WeightedModule};
pub use vector::{Coweight, Dual, Frame, Lie, RationalVector, Weight};
pub use weyl::WeylElement;

use crate::exact::{self, Rational};
use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("unsupported group kind {0:?}; expected su(n), u(n) or torus(r), joined by 'x'")]
    UnsupportedKind(String),
    #[error("{0}: rank must be at least 1")]
    RankZero(String),
    #[error("form has {got} scales but the group has {expected} factors")]
    FormArity { expected: usize, got: usize },
    #[error("form scale {0} is not a positive integer; the form must be positive and integral on coroots")]
    FormScale(String),
    #[error("vector has {got} coordinates, expected {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("coordinates of block {block} do not sum to zero")]
    TraceNonzero { block: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorKind {
    Su,
    U,
    Torus,
}

/// One simple factor (or torus) occupying `size` consecutive ambient coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factor {
    pub kind: FactorKind,
    pub size: usize,
    pub offset: usize,
}

impl Factor {
    pub fn rank(&self) -> usize {
        match self.kind {
            FactorKind::Su => self.size - 1,
            FactorKind::U | FactorKind::Torus => self.size,
        }
    }

    pub fn range(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.size
    }

    /// Whether the Weyl group acts on this factor's coordinates.
    pub fn has_roots(&self) -> bool {
        self.kind != FactorKind::Torus
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FactorKind::Su => write!(f, "su({})", self.size),
            FactorKind::U => write!(f, "u({})", self.size),
            FactorKind::Torus => write!(f, "torus({})", self.size),
        }
    }
}

/// Per-factor positive integer multiples of the dot product.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BilinearForm {
    scales: Vec<u64>,
}

impl BilinearForm {
    pub fn scales(&self) -> &[u64] {
        &self.scales
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    factors: Vec<Factor>,
    dim: usize,
    positive_roots: Vec<Weight>,
    simple_positions: Vec<usize>,
    form: BilinearForm,
}

impl RootDatum {
    pub fn new(kinds: &[(FactorKind, usize)]) -> Result<Self, RootError> {
        let mut factors = Vec::new();
        let mut offset = 0;
        for &(kind, size) in kinds {
            let f = Factor { kind, size, offset };
            let min = if kind == FactorKind::Su { 2 } else { 1 };
            if size < min {
                return Err(RootError::RankZero(f.to_string()));
            }
            offset += size;
            factors.push(f);
        }
        if factors.is_empty() {
            return Err(RootError::UnsupportedKind(String::new()));
        }
        let dim = offset;
        let mut positive_roots = Vec::new();
        let mut simple_positions = Vec::new();
        for f in factors.iter().filter(|f| f.has_roots()) {
            for i in f.range() {
                for j in i + 1..f.offset + f.size {
                    positive_roots.push(Self::root_vector(dim, i, j));
                }
                if i + 1 < f.offset + f.size {
                    simple_positions.push(i);
                }
            }
        }
        let form = BilinearForm { scales: vec![1; factors.len()] };
        Ok(RootDatum { factors, dim, positive_roots, simple_positions, form })
    }

    /// Parses descriptions such as `su(3)`, `u(2)`, `torus(1)` or `su(2) x torus(1)`.
    pub fn parse(desc: &str) -> Result<Self, RootError> {
        let mut kinds = Vec::new();
        for part in desc.split(['x', '×']) {
            let p = part.trim();
            let bad = || RootError::UnsupportedKind(p.to_string());
            let (name, rest) = p.split_once('(').ok_or_else(bad)?;
            let n: usize = rest.strip_suffix(')').ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
            let kind = match name.trim() {
                "su" | "SU" => FactorKind::Su,
                "u" | "U" => FactorKind::U,
                "torus" | "t" | "T" => FactorKind::Torus,
                _ => return Err(bad()),
            };
            if n == 0 || (kind == FactorKind::Su && n == 1) {
                return Err(RootError::RankZero(p.to_string()));
            }
            kinds.push((kind, n));
        }
        Self::new(&kinds)
    }

    pub fn with_form(mut self, scales: &[u64]) -> Result<Self, RootError> {
        if scales.len() != self.factors.len() {
            return Err(RootError::FormArity { expected: self.factors.len(), got: scales.len() });
        }
        if let Some(s) = scales.iter().find(|&&s| s == 0) {
            return Err(RootError::FormScale(s.to_string()));
        }
        self.form = BilinearForm { scales: scales.to_vec() };
        Ok(self)
    }

    fn root_vector(dim: usize, i: usize, j: usize) -> Weight {
        let mut v = vec![Rational::zero(); dim];
        v[i] = Rational::one();
        v[j] = -Rational::one();
        Weight::new(v)
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    /// Ambient coordinate count `N`.
    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(Factor::rank).sum()
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    /// Positions `i` such that `e_i - e_{i+1}` is a simple root.
    pub fn simple_positions(&self) -> &[usize] {
        &self.simple_positions
    }

    pub fn simple_roots(&self) -> Vec<Weight> {
        self.simple_positions.iter().map(|&i| Self::root_vector(self.dim, i, i + 1)).collect()
    }

    pub fn simple_coroots(&self) -> Vec<Coweight> {
        self.simple_roots().iter().map(|a| a.transpose()).collect()
    }

    /// `C[i][j] = ⟨α_i, H_j⟩`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let roots = self.simple_roots();
        let coroots = self.simple_coroots();
        roots
            .iter()
            .map(|a| {
                coroots
                    .iter()
                    .map(|h| {
                        let p = a.pair(h);
                        i64::try_from(p.to_integer()).expect("small Cartan entry")
                    })
                    .collect()
            })
            .collect()
    }

    pub fn weyl_order(&self) -> BigUint {
        self.factors
            .iter()
            .filter(|f| f.has_roots())
            .map(|f| (1..=f.size as u64).map(BigUint::from).product::<BigUint>())
            .product()
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement::identity(self.dim)
    }

    pub fn longest_element(&self) -> WeylElement {
        let mut perm: Vec<usize> = (0..self.dim).collect();
        for f in self.factors.iter().filter(|f| f.has_roots()) {
            perm[f.range()].reverse();
        }
        WeylElement::from_perm(perm)
    }

    /// Every element of `W`, ordered by (length, one-line notation).
    pub fn weyl_group(&self) -> Vec<WeylElement> {
        let generic = Coweight::new((0..self.dim).map(|i| -exact::int(i as i64)).collect());
        self.minimal_coset_reps(&generic)
    }

    pub fn factor_of(&self, position: usize) -> &Factor {
        self.factors
            .iter()
            .find(|f| f.range().contains(&position))
            .expect("position inside ambient range")
    }

    pub fn check_len(&self, n: usize) -> Result<(), RootError> {
        if n != self.dim {
            return Err(RootError::Dimension { expected: self.dim, got: n });
        }
        Ok(())
    }

    /// Checks that a coweight lies in `t` (trace zero on su blocks).
    pub fn check_in_t(&self, gamma: &Coweight) -> Result<(), RootError> {
        self.check_len(gamma.len())?;
        for f in self.factors.iter().filter(|f| f.kind == FactorKind::Su) {
            let s: Rational = gamma.coords()[f.range()].iter().sum();
            if !s.is_zero() {
                return Err(RootError::TraceNonzero { block: f.to_string() });
            }
        }
        Ok(())
    }

    /// Orthogonal projection onto the trace-zero slice of every su block.
    pub fn project<F: Frame>(&self, v: &RationalVector<F>) -> RationalVector<F> {
        let mut c = v.coords().to_vec();
        for f in self.factors.iter().filter(|f| f.kind == FactorKind::Su) {
            let mean: Rational = c[f.range()].iter().sum::<Rational>() / exact::int(f.size as i64);
            for x in &mut c[f.range()] {
                *x -= &mean;
            }
        }
        RationalVector::new(c)
    }

    /// Rows whose kernel is `t` inside the ambient coordinates.
    pub fn trace_rows(&self) -> Vec<Vec<Rational>> {
        self.factors
            .iter()
            .filter(|f| f.kind == FactorKind::Su)
            .map(|f| {
                let mut row = vec![Rational::zero(); self.dim];
                for x in &mut row[f.range()] {
                    *x = Rational::one();
                }
                row
            })
            .collect()
    }

    /// Weakly decreasing within every block that carries roots.
    pub fn is_dominant<F: Frame>(&self, v: &RationalVector<F>) -> bool {
        self.simple_positions.iter().all(|&i| v.coords()[i] >= v.coords()[i + 1])
    }

    /// The invariant form on `t`.
    pub fn form_value(&self, a: &Coweight, b: &Coweight) -> Rational {
        self.factors
            .iter()
            .zip(&self.form.scales)
            .map(|(f, &s)| {
                let dot: Rational = f.range().map(|i| &a.coords()[i] * &b.coords()[i]).sum();
                dot * exact::int(s as i64)
            })
            .sum()
    }

    /// Applies a Weyl element after checking it preserves every block.
    pub fn check_weyl(&self, w: &WeylElement) -> bool {
        w.degree() == self.dim
            && (0..self.dim).all(|i| {
                let f = self.factor_of(i);
                if f.has_roots() {
                    f.range().contains(&w.perm()[i])
                } else {
                    w.perm()[i] == i
                }
            })
    }

    /// Minimal-length representatives of `W / W^γ`, one per arrangement of `γ`,
    /// sorted by (length, one-line notation).
    pub fn minimal_coset_reps(&self, gamma: &Coweight) -> Vec<WeylElement> {
        let mut partial: Vec<Vec<usize>> = vec![(0..self.dim).collect()];
        for f in self.factors.iter().filter(|f| f.has_roots()) {
            let vals = &gamma.coords()[f.range()];
            let arrangements = distinct_arrangements(vals);
            let mut next = Vec::with_capacity(partial.len() * arrangements.len());
            for p in &partial {
                for arr in &arrangements {
                    let mut q = p.clone();
                    for (k, &t) in arr.iter().enumerate() {
                        q[f.offset + k] = f.offset + t;
                    }
                    next.push(q);
                }
            }
            partial = next;
        }
        let mut reps: Vec<WeylElement> = partial.into_iter().map(WeylElement::from_perm).collect();
        reps.sort_by_cached_key(|w| (w.length(), w.perm().to_vec()));
        reps
    }

    /// Order of the stabilizer `W^γ`.
    pub fn stabilizer_order(&self, gamma: &Coweight) -> BigUint {
        let mut order = BigUint::one();
        for f in self.factors.iter().filter(|f| f.has_roots()) {
            let mut counts: BTreeMap<&Rational, u64> = BTreeMap::new();
            for x in &gamma.coords()[f.range()] {
                *counts.entry(x).or_default() += 1;
            }
            for &c in counts.values() {
                order *= (1..=c).map(BigUint::from).product::<BigUint>();
            }
        }
        order
    }

    /// Minimal `v` with `vγ` dominant, or antidominant when `ascending`. Ties keep their order.
    pub fn sorting_element(&self, gamma: &Coweight, ascending: bool) -> WeylElement {
        let mut perm: Vec<usize> = (0..self.dim).collect();
        for f in self.factors.iter().filter(|f| f.has_roots()) {
            let mut idx: Vec<usize> = f.range().collect();
            idx.sort_by(|&a, &b| {
                let o = gamma.coords()[b].cmp(&gamma.coords()[a]);
                if ascending { o.reverse() } else { o }
            });
            for (target, &src) in idx.iter().enumerate() {
                perm[src] = f.offset + target;
            }
        }
        WeylElement::from_perm(perm)
    }

    /// `ρ_(γ,C) = Σ_{α>0, ⟨α,γ⟩<0} α`.
    pub fn rho_gamma(&self, gamma: &Coweight) -> Weight {
        self.positive_roots
            .iter()
            .filter(|a| a.pair(gamma).is_negative())
            .fold(Weight::zero(self.dim), |acc, a| acc.add(a))
    }

    /// Positive roots with positive, zero and negative pairing against `γ`.
    pub fn root_signs(&self, gamma: &Coweight) -> (usize, usize, usize) {
        let mut counts = (0, 0, 0);
        for a in &self.positive_roots {
            let p = a.pair(gamma);
            if p.is_positive() {
                counts.0 += 1;
            } else if p.is_zero() {
                counts.1 += 1;
            } else {
                counts.2 += 1;
            }
        }
        counts
    }

    /// The adjoint module: roots with multiplicity one and zero with multiplicity `rank`.
    pub fn adjoint_module(&self) -> WeightedModule {
        let mut m = WeightedModule::new();
        for a in &self.positive_roots {
            m.insert(a.clone(), 1);
            m.insert(a.neg(), 1);
        }
        m.insert(Weight::zero(self.dim), self.rank() as u64);
        m
    }
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

/// For each distinct rearrangement of `vals`, the target slot of every source index,
/// with equal values kept in their original relative order.
fn distinct_arrangements(vals: &[Rational]) -> Vec<Vec<usize>> {
    let n = vals.len();
    let mut distinct: Vec<&Rational> = vals.iter().collect();
    distinct.sort();
    distinct.dedup();
    let counts: Vec<usize> = distinct.iter().map(|d| vals.iter().filter(|v| v == d).count()).collect();
    let mut out = Vec::new();
    let mut seq = Vec::with_capacity(n);
    let mut remaining = counts.clone();
    fill(&mut seq, &mut remaining, n, &mut out);
    out.into_iter()
        .map(|arranged: Vec<usize>| {
            let mut target = vec![0; n];
            let mut next_slot: Vec<Vec<usize>> = vec![Vec::new(); distinct.len()];
            for (slot, &d) in arranged.iter().enumerate() {
                next_slot[d].push(slot);
            }
            let mut used = vec![0; distinct.len()];
            for (i, v) in vals.iter().enumerate() {
                let d = distinct.iter().position(|x| *x == v).expect("value present");
                target[i] = next_slot[d][used[d]];
                used[d] += 1;
            }
            target
        })
        .collect()
}

fn fill(seq: &mut Vec<usize>, remaining: &mut [usize], n: usize, out: &mut Vec<Vec<usize>>) {
    if seq.len() == n {
        out.push(seq.clone());
        return;
    }
    for d in 0..remaining.len() {
        if remaining[d] > 0 {
            remaining[d] -= 1;
            seq.push(d);
            fill(seq, remaining, n, out);
            seq.pop();
            remaining[d] += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn su2_basics() {
        let d = RootDatum::parse("su(2)").unwrap();
        assert_eq!(d.rank(), 1);
        assert_eq!(d.positive_roots(), &[Weight::from_ints(&[1, -1])]);
        assert_eq!(d.cartan_matrix(), vec![vec![2]]);
    }

    #[test]
    fn counts() {
        let d = RootDatum::parse("su(3)").unwrap();
        assert_eq!(d.positive_roots().len(), 3);
        assert_eq!(RootDatum::parse("su(4)").unwrap().weyl_order(), BigUint::from(24u32));
        assert_eq!(RootDatum::parse("su(4)").unwrap().weyl_group().len(), 24);
    }

    #[test]
    fn product_parsing() {
        let d = RootDatum::parse("su(2) x torus(1)").unwrap();
        assert_eq!(d.ambient_dim(), 3);
        assert_eq!(d.rank(), 2);
        assert_eq!(d.to_string(), "su(2) x torus(1)");
        assert!(matches!(RootDatum::parse("so(3)"), Err(RootError::UnsupportedKind(_))));
        assert!(matches!(RootDatum::parse("su(1)"), Err(RootError::RankZero(_))));
    }

    #[test]
    fn coset_reps_examples() {
        let d = RootDatum::parse("su(2)").unwrap();
        let h = Coweight::from_ints(&[1, -1]);
        let reps = d.minimal_coset_reps(&h);
        assert_eq!(reps, vec![d.identity(), WeylElement::simple(2, 0)]);
        assert_eq!(d.minimal_coset_reps(&Coweight::zero(2)), vec![d.identity()]);

        let d3 = RootDatum::parse("su(3)").unwrap();
        let g = Coweight::from_ints(&[1, 1, -2]);
        let reps = d3.minimal_coset_reps(&g);
        let lengths: Vec<usize> = reps.iter().map(WeylElement::length).collect();
        assert_eq!(lengths, vec![0, 1, 2]);
    }

    #[test]
    fn rho_examples() {
        let d = RootDatum::parse("su(2)").unwrap();
        assert!(d.rho_gamma(&Coweight::from_ints(&[1, -1])).is_zero());
        assert_eq!(d.rho_gamma(&Coweight::from_ints(&[-1, 1])), Weight::from_ints(&[1, -1]));
        let d3 = RootDatum::parse("su(3)").unwrap();
        assert!(d3.rho_gamma(&Coweight::from_ints(&[2, 0, -2])).is_zero());
    }

    #[test]
    fn sorting_element_is_minimal() {
        let d = RootDatum::parse("su(3)").unwrap();
        let g = Coweight::from_ints(&[-1, 2, -1]);
        let v = d.sorting_element(&g, false);
        assert_eq!(v.apply(&g), Coweight::from_ints(&[2, -1, -1]));
        assert_eq!(v.length(), 1);
        let u = d.sorting_element(&g, true);
        assert_eq!(u.apply(&g), Coweight::from_ints(&[-1, -1, 2]));
        assert_eq!(u.length(), 1);
    }

    #[test]
    fn form_scales_validated() {
        let d = RootDatum::parse("su(2) x u(1)").unwrap();
        assert!(d.clone().with_form(&[1]).is_err());
        assert!(d.clone().with_form(&[1, 0]).is_err());
        let d = d.with_form(&[2, 3]).unwrap();
        let a = Coweight::from_ints(&[1, -1, 1]);
        assert_eq!(d.form_value(&a, &a), exact::int(2 * 2 + 3));
    }
}
