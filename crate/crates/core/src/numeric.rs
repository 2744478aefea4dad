//! Floating-point evaluation of sines and phases whose arguments are exact
//! rational multiples of π, in double or double-double precision.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{self, q, Q};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    #[default]
    Double,
    Extended,
}

impl std::str::FromStr for Precision {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "double" => Ok(Precision::Double),
            "extended" => Ok(Precision::Extended),
            other => Err(crate::Error::Config(format!(
                "precision must be double or extended, got {other:?}"
            ))),
        }
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Precision::Double => "double",
            Precision::Extended => "extended",
        })
    }
}

/// Reduced form of `θ mod 2`: `sin(πθ) = sign · sin(π r)` with `r ∈ [0, 1/2]`.
fn reduce_sine(theta: &Q) -> (f64, Q) {
    let mut r = rational::rem_euclid(theta, &q(2));
    let mut sign = 1.0;
    if r >= Q::one() {
        r -= Q::one();
        sign = -1.0;
    }
    let half = Q::new(1, 2);
    if r > half {
        r = Q::one() - r;
    }
    (sign, r)
}

/// True iff `sin(πθ) = 0`, i.e. `θ ∈ ℤ`.
pub fn sin_pi_is_zero(theta: &Q) -> bool {
    theta.is_integer()
}

/// `sin(πθ)` with exact argument reduction.
pub fn sin_pi(theta: &Q) -> f64 {
    let (sign, r) = reduce_sine(theta);
    if r.is_zero() {
        return 0.0;
    }
    let quarter = Q::new(1, 4);
    let v = if r <= quarter {
        (std::f64::consts::PI * rational::to_f64(&r)).sin()
    } else {
        (std::f64::consts::PI * rational::to_f64(&(Q::new(1, 2) - r))).cos()
    };
    sign * v
}

pub fn cos_pi(theta: &Q) -> f64 {
    sin_pi(&(theta + Q::new(1, 2)))
}

/// `exp(iπθ)`.
pub fn cis_pi(theta: &Q) -> Complex64 {
    Complex64::new(cos_pi(theta), sin_pi(theta))
}

/// Scalar type for long products of sines.
pub trait Real:
    Copy
    + fmt::Debug
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_f64(x: f64) -> Self;
    fn from_q(x: &Q) -> Self;
    fn to_f64(self) -> f64;
    fn sin_pi(theta: &Q) -> Self;
    fn one() -> Self {
        Self::from_f64(1.0)
    }
    fn zero() -> Self {
        Self::from_f64(0.0)
    }
    fn powi(self, n: i32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc * self;
        }
        if n < 0 {
            Self::one() / acc
        } else {
            acc
        }
    }
}

impl Real for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn from_q(x: &Q) -> Self {
        rational::to_f64(x)
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn sin_pi(theta: &Q) -> Self {
        sin_pi(theta)
    }
}

/// Unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`, about 32 significant
/// digits.
#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

const DD_PI: DoubleDouble = DoubleDouble {
    hi: std::f64::consts::PI,
    lo: 1.224_646_799_147_353_2e-16,
};

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const fn new(hi: f64, lo: f64) -> Self {
        Self { hi, lo }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    fn from_i64(n: i64) -> Self {
        let hi = n as f64;
        let lo = (n as i128 - hi as i128) as f64;
        let (h, l) = quick_two_sum(hi, lo);
        Self { hi: h, lo: l }
    }

    fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (h, l) = quick_two_sum(p, e + self.lo * b);
        Self { hi: h, lo: l }
    }

    /// Taylor series, adequate for `|x| ≤ π/4`.
    fn sin_small(x: Self) -> Self {
        let x2 = x * x;
        let mut term = x;
        let mut sum = x;
        let mut k = 1.0;
        loop {
            term = -(term * x2) / Self::from_f64((k + 1.0) * (k + 2.0));
            k += 2.0;
            sum = sum + term;
            if term.hi.abs() < 1e-34 * sum.hi.abs() {
                return sum;
            }
        }
    }

    fn cos_small(x: Self) -> Self {
        let x2 = x * x;
        let mut term = Self::from_f64(1.0);
        let mut sum = term;
        let mut k = 0.0;
        loop {
            term = -(term * x2) / Self::from_f64((k + 1.0) * (k + 2.0));
            k += 2.0;
            sum = sum + term;
            if term.hi.abs() < 1e-34 {
                return sum;
            }
        }
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.hi + self.lo)
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Self { hi, lo }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (h, l) = quick_two_sum(q1, q2);
        Self { hi: h, lo: l } + Self::from_f64(q3)
    }
}

impl Real for DoubleDouble {
    fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }
    fn from_q(x: &Q) -> Self {
        Self::from_i64(*x.numer()) / Self::from_i64(*x.denom())
    }
    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
    fn sin_pi(theta: &Q) -> Self {
        let (sign, r) = reduce_sine(theta);
        if r.is_zero() {
            return Self::zero();
        }
        let v = if r <= Q::new(1, 4) {
            Self::sin_small(DD_PI * Self::from_q(&r))
        } else {
            Self::cos_small(DD_PI * Self::from_q(&(Q::new(1, 2) - r)))
        };
        if sign < 0.0 {
            -v
        } else {
            v
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn sin_pi_exact_zeros_and_symmetry() {
        assert_eq!(sin_pi(&q(0)), 0.0);
        assert_eq!(sin_pi(&q(3)), 0.0);
        assert_eq!(sin_pi(&frac(1, 2)), 1.0);
        assert_eq!(sin_pi(&frac(-1, 2)), -1.0);
        assert!((sin_pi(&frac(1, 6)) - 0.5).abs() < 1e-16);
        assert!((sin_pi(&frac(7, 6)) + 0.5).abs() < 1e-16);
        assert!((sin_pi(&frac(201, 4)) - std::f64::consts::FRAC_1_SQRT_2).abs() < 2e-16);
    }

    #[test]
    fn cis_pi_is_unit() {
        for k in -20..20 {
            let z = cis_pi(&frac(k, 7));
            assert!((z.norm() - 1.0).abs() < 1e-15);
        }
        let z = cis_pi(&q(1));
        assert_eq!(z.re, -1.0);
    }

    #[test]
    fn double_double_sine_matches_known_values() {
        let s = DoubleDouble::sin_pi(&frac(1, 6));
        assert!((s - DoubleDouble::from_f64(0.5)).to_f64().abs() < 1e-31);
        let s = DoubleDouble::sin_pi(&frac(1, 4));
        let half_sqrt2 = DoubleDouble::new(std::f64::consts::FRAC_1_SQRT_2, -4.833646656726457e-17);
        assert!((s - half_sqrt2).to_f64().abs() < 1e-31);
        let s = DoubleDouble::sin_pi(&frac(1, 3));
        let expect = DoubleDouble::new(0.8660254037844386, 5.0175421109034514e-17);
        assert!((s - expect).to_f64().abs() < 1e-31);
    }

    #[test]
    fn double_double_arithmetic() {
        let third = DoubleDouble::from_q(&frac(1, 3));
        let back = third * DoubleDouble::from_f64(3.0);
        assert!((back - DoubleDouble::one()).to_f64().abs() < 1e-32);
        let x = DoubleDouble::from_f64(2.0).powi(-3);
        assert_eq!(x.to_f64(), 0.125);
    }
}
