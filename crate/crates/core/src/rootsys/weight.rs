use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::Zero;

use crate::rational::{format_rational, Q};

/// A point of the ambient Euclidean space with exact rational coordinates.
///
/// Lattice points, roots, coroots and shifted points such as `ρ_g + λ` all
/// use this type; inner products never leave exact arithmetic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    coords: Vec<Q>,
}

impl Weight {
    pub fn new(coords: Vec<Q>) -> Self {
        Self { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| Q::from_integer(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![Q::zero(); dim])
    }

    /// Unit vector `e_i` (0-based).
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut w = Self::zero(dim);
        w.coords[i] = Q::from_integer(1);
        w
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &Weight) -> Q {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(Q::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm2(&self) -> Q {
        self.dot(self)
    }

    /// `x∨ = 2x/‖x‖²`.
    pub fn coroot(&self) -> Weight {
        let n = self.norm2();
        assert!(!n.is_zero(), "coroot of the zero vector");
        self * (Q::from_integer(2) / n)
    }

    /// Reflection in the hyperplane orthogonal to `root`, given the
    /// matching `coroot`.
    pub fn reflect(&self, root: &Weight, coroot: &Weight) -> Weight {
        let k = self.dot(coroot);
        if k.is_zero() {
            self.clone()
        } else {
            self - &(root * k)
        }
    }

    pub fn scale(&self, k: Q) -> Weight {
        self * k
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(c))?;
        }
        write!(f, ")")
    }
}

impl Add<&Weight> for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight::new(
            self.coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl Sub<&Weight> for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight::new(
            self.coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, rhs: &Weight) {
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a += b;
        }
    }
}

impl SubAssign<&Weight> for Weight {
    fn sub_assign(&mut self, rhs: &Weight) {
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a -= b;
        }
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight::new(self.coords.iter().map(|a| -a).collect())
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -&self
    }
}

impl Mul<Q> for &Weight {
    type Output = Weight;
    fn mul(self, k: Q) -> Weight {
        Weight::new(self.coords.iter().map(|a| a * k).collect())
    }
}

impl Mul<Q> for Weight {
    type Output = Weight;
    fn mul(self, k: Q) -> Weight {
        &self * k
    }
}
