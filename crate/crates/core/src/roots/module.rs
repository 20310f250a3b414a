use super::vector::{Coweight, Weight};
use crate::exact::Rational;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

/// A finite multiset of torus weights.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct WeightedModule {
    weights: BTreeMap<Weight, u64>,
}

/// The decomposition `M = M^{γ>0} ⊕ M^{γ=0} ⊕ M^{γ<0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPieces {
    pub positive: WeightedModule,
    pub zero: WeightedModule,
    pub negative: WeightedModule,
}

impl GradedPieces {
    pub fn dims(&self) -> (u64, u64, u64) {
        (self.positive.dim(), self.zero.dim(), self.negative.dim())
    }
}

impl WeightedModule {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_weights(ws: impl IntoIterator<Item = Weight>) -> Self {
        let mut m = Self::new();
        for w in ws {
            m.insert(w, 1);
        }
        m
    }

    /// Adds `mult` copies of `w`; a zero multiplicity is ignored.
    pub fn insert(&mut self, w: Weight, mult: u64) {
        if mult > 0 {
            *self.weights.entry(w).or_default() += mult;
        }
    }

    pub fn dim(&self) -> u64 {
        self.weights.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.weights.iter().map(|(w, &m)| (w, m))
    }

    /// Each weight repeated by its multiplicity.
    pub fn expanded(&self) -> Vec<Weight> {
        self.iter()
            .flat_map(|(w, m)| std::iter::repeat_n(w.clone(), m as usize))
            .collect()
    }

    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.weights.get(w).copied().unwrap_or(0)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut m = self.clone();
        for (w, k) in other.iter() {
            m.insert(w.clone(), k);
        }
        m
    }

    pub fn negated(&self) -> Self {
        let mut m = Self::new();
        for (w, k) in self.iter() {
            m.insert(w.neg(), k);
        }
        m
    }

    pub fn is_self_dual(&self) -> bool {
        self.iter().all(|(w, k)| self.multiplicity(&w.neg()) == k)
    }

    pub fn nonzero_weights(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.iter().filter(|(w, _)| !w.is_zero())
    }

    fn filtered(&self, keep: impl Fn(&Rational) -> bool, gamma: &Coweight) -> Self {
        let mut m = Self::new();
        for (w, k) in self.iter() {
            if keep(&w.pair(gamma)) {
                m.insert(w.clone(), k);
            }
        }
        m
    }

    pub fn graded_pieces(&self, gamma: &Coweight) -> GradedPieces {
        GradedPieces {
            positive: self.filtered(Signed::is_positive, gamma),
            zero: self.filtered(Zero::is_zero, gamma),
            negative: self.filtered(Signed::is_negative, gamma),
        }
    }

    /// `Tr_γ(M^{γ>0}) = Σ_{⟨λ,γ⟩>0} mult(λ)·⟨λ,γ⟩`.
    pub fn trace_gamma_positive(&self, gamma: &Coweight) -> Rational {
        self.iter()
            .map(|(w, k)| (w.pair(gamma), k))
            .filter(|(p, _)| p.is_positive())
            .map(|(p, k)| p * Rational::from_integer(k.into()))
            .sum()
    }

    /// `Σ_λ mult(λ)·⟨λ,γ⟩` over all weights.
    pub fn total_pairing(&self, gamma: &Coweight) -> Rational {
        self.iter()
            .map(|(w, k)| w.pair(gamma) * Rational::from_integer(k.into()))
            .sum()
    }
}
