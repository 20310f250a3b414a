use super::vector::{Frame, RationalVector};
use std::fmt;

/// A Weyl group element of a type-A product, stored as a block-preserving
/// permutation of the ambient coordinates in one-line notation.
///
/// `w` sends the basis vector `e_i` to `e_{w[i]}`, so `(wξ)_{w[i]} = ξ_i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    perm: Vec<usize>,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement { perm: (0..n).collect() }
    }

    /// Wraps a permutation without checking block structure.
    pub fn from_perm(perm: Vec<usize>) -> Self {
        debug_assert!({
            let mut s = perm.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &x)| i == x)
        });
        WeylElement { perm }
    }

    /// Product of adjacent transpositions `s_{i}` (swapping `i` and `i+1`), leftmost applied last.
    pub fn from_word(n: usize, word: &[usize]) -> Self {
        word.iter()
            .fold(Self::identity(n), |acc, &i| acc.compose(&Self::simple(n, i)))
    }

    pub fn simple(n: usize, i: usize) -> Self {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, i + 1);
        WeylElement { perm }
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn degree(&self) -> usize {
        self.perm.len()
    }

    /// `(self ∘ other)[i] = self[other[i]]`.
    pub fn compose(&self, other: &Self) -> Self {
        WeylElement { perm: other.perm.iter().map(|&j| self.perm[j]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        WeylElement { perm: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Inversion count; equals the Coxeter length for block-preserving permutations.
    pub fn length(&self) -> usize {
        let n = self.perm.len();
        let mut len = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.perm[i] > self.perm[j] {
                    len += 1;
                }
            }
        }
        len
    }

    pub fn has_right_descent(&self, i: usize) -> bool {
        self.perm[i] > self.perm[i + 1]
    }

    /// A reduced word `[i_1, ..., i_l]` with `self = s_{i_1} ⋯ s_{i_l}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.perm.clone();
        let mut word = Vec::new();
        while let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) {
            w.swap(i, i + 1);
            word.push(i);
        }
        word.reverse();
        word
    }

    pub fn apply<F: Frame>(&self, v: &RationalVector<F>) -> RationalVector<F> {
        assert_eq!(v.len(), self.perm.len(), "ambient dimension mismatch");
        let mut out = v.coords().to_vec();
        for (i, x) in v.coords().iter().enumerate() {
            out[self.perm[i]] = x.clone();
        }
        RationalVector::new(out)
    }

    pub fn apply_f64(&self, v: &[f64]) -> Vec<f64> {
        let mut out = v.to_vec();
        for (i, &x) in v.iter().enumerate() {
            out[self.perm[i]] = x;
        }
        out
    }

    /// One-line notation with 1-based values.
    pub fn one_line(&self) -> Vec<usize> {
        self.perm.iter().map(|p| p + 1).collect()
    }

    pub fn from_one_line(values: &[usize]) -> Option<Self> {
        let perm: Vec<usize> = values.iter().map(|&v| v.checked_sub(1)).collect::<Option<_>>()?;
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return None;
            }
        }
        Some(WeylElement { perm })
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{self}")
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.perm.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", p + 1)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::Coweight;

    #[test]
    fn action_convention() {
        let w = WeylElement::simple(3, 0);
        let g = Coweight::from_ints(&[3, 2, 1]);
        assert_eq!(w.apply(&g), Coweight::from_ints(&[2, 3, 1]));
        let c = WeylElement::from_perm(vec![1, 2, 0]);
        let v = Coweight::from_ints(&[7, 8, 9]);
        assert_eq!(c.apply(&v), Coweight::from_ints(&[9, 7, 8]));
        let a = WeylElement::simple(3, 1);
        assert_eq!(a.compose(&c).apply(&v), a.apply(&c.apply(&v)));
    }

    #[test]
    fn reduced_word_round_trip() {
        let w = WeylElement::from_perm(vec![2, 0, 3, 1]);
        let word = w.reduced_word();
        assert_eq!(word.len(), w.length());
        assert_eq!(WeylElement::from_word(4, &word), w);
    }

    #[test]
    fn one_line_parsing() {
        let w = WeylElement::from_one_line(&[2, 1, 3]).unwrap();
        assert_eq!(w, WeylElement::simple(3, 0));
        assert!(WeylElement::from_one_line(&[1, 1, 3]).is_none());
        assert!(WeylElement::from_one_line(&[0, 1]).is_none());
    }
}
