//! Exact rational helpers shared by the lattice code.

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used for every lattice quantity.
pub type Q = Rational64;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

/// Parse `"p/q"` or `"n"`. Decimal notation is rejected.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("expected an integer or p/q rational, got {s:?}"));
    if s.contains('.') || s.contains('e') || s.contains('E') {
        return Err(bad());
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Q::new(n, d))
        }
        None => Ok(q(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format_rational(x: &Q) -> String {
    if x.is_integer() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_f64(x: &Q) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

/// Integer part when `x` is integral.
pub fn as_integer(x: &Q) -> Option<i64> {
    x.is_integer().then(|| x.to_integer())
}

/// True iff `x` is an integer multiple of `m` (`m != 0`).
pub fn is_multiple_of(x: &Q, m: &Q) -> bool {
    (x / m).is_integer()
}

/// Inverse of a square rational matrix by Gauss-Jordan elimination.
pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Determinant of a square rational matrix.
pub fn determinant(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Q::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        let p = a[col][col];
        det *= p;
        for r in col + 1..n {
            let f = a[r][col] / p;
            if !f.is_zero() {
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    det
}

/// Reduce `x` into the half-open interval `[0, m)`.
pub fn rem_euclid(x: &Q, m: &Q) -> Q {
    let k = (x / m).floor();
    x - k * m
}

pub fn lcm_denominators<'a>(xs: impl IntoIterator<Item = &'a Q>) -> i64 {
    xs.into_iter().fold(1i64, |acc, x| acc.lcm(x.denom()))
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_accepts_integers_and_fractions() {
        assert_eq!(parse_rational("7/10").unwrap(), frac(7, 10));
        assert_eq!(parse_rational(" 3 ").unwrap(), q(3));
        assert_eq!(parse_rational("-2/4").unwrap(), frac(-1, 2));
    }

    #[test]
    fn parse_rejects_decimals_and_zero_denominator() {
        assert!(parse_rational("0.7").is_err());
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn inverse_of_a2_cartan() {
        let c = vec![vec![q(2), q(-1)], vec![q(-1), q(2)]];
        let inv = inverse(&c).unwrap();
        assert_eq!(
            inv,
            vec![vec![frac(2, 3), frac(1, 3)], vec![frac(1, 3), frac(2, 3)]]
        );
        assert_eq!(determinant(&c), q(3));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let c = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert!(inverse(&c).is_none());
        assert_eq!(determinant(&c), q(0));
    }

    #[test]
    fn rem_euclid_wraps_negative() {
        assert_eq!(rem_euclid(&frac(-1, 3), &q(2)), frac(5, 3));
        assert_eq!(rem_euclid(&frac(7, 2), &q(2)), frac(3, 2));
    }
}
