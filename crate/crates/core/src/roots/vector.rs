use crate::exact::{self, Rational};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::fmt;
use std::marker::PhantomData;

/// Marker for the frame a coordinate vector lives in.
pub trait Frame: Copy + Clone + fmt::Debug + Default + PartialEq + Eq + std::hash::Hash + PartialOrd + Ord {
    const NAME: &'static str;
}

/// The Cartan subalgebra `t`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lie;

/// Its dual `t*`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dual;

impl Frame for Lie {
    const NAME: &'static str = "t";
}
impl Frame for Dual {
    const NAME: &'static str = "t*";
}

/// Exact coordinates in the ambient `R^N` of a root datum, tagged by frame.
///
/// Pairing is only defined between a [`Weight`] and a [`Coweight`], so a
/// frame mismatch is a compile-time error.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector<F: Frame> {
    coords: Vec<Rational>,
    frame: PhantomData<F>,
}

pub type Coweight = RationalVector<Lie>;
pub type Weight = RationalVector<Dual>;

impl<F: Frame> RationalVector<F> {
    pub fn new(coords: Vec<Rational>) -> Self {
        RationalVector { coords, frame: PhantomData }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![Rational::zero(); n])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self::new(v.iter().map(|&x| exact::int(x)).collect())
    }

    pub fn from_bigints(v: &[BigInt]) -> Self {
        Self::new(v.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, q: &Rational) -> Self {
        Self::new(self.coords.iter().map(|x| x * q).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coords.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    /// Coprime integer multiple with the same orientation. Zero stays zero.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Self::from_bigints(&exact::primitive_integers(&self.coords))
    }

    /// Primitive representative of the line `R·self`, first nonzero entry positive.
    pub fn line_representative(&self) -> Self {
        let p = self.primitive();
        match p.coords.iter().find(|x| !x.is_zero()) {
            Some(x) if x.is_negative() => p.neg(),
            _ => p,
        }
    }

    pub fn integer_coords(&self) -> Option<Vec<BigInt>> {
        self.coords
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(exact::to_f64).collect()
    }

    /// Reinterprets the coordinates in the other frame through the dot product.
    pub fn transpose<G: Frame>(&self) -> RationalVector<G> {
        RationalVector::new(self.coords.clone())
    }

    fn dot(&self, coords: &[Rational]) -> Rational {
        assert_eq!(self.coords.len(), coords.len(), "ambient dimension mismatch");
        self.coords.iter().zip(coords).map(|(a, b)| a * b).sum()
    }
}

impl Weight {
    pub fn pair(&self, gamma: &Coweight) -> Rational {
        self.dot(gamma.coords())
    }
}

impl Coweight {
    pub fn pair(&self, weight: &Weight) -> Rational {
        weight.pair(self)
    }
}

impl<F: Frame> fmt::Debug for RationalVector<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", F::NAME, self)
    }
}

impl<F: Frame> fmt::Display for RationalVector<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}
