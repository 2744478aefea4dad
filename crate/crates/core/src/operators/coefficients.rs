//! The coefficients `V_ν` and `U_{ν,η}`. Zeros of individual sine factors
//! are decided on exact rational arguments; floating point only enters
//! once the zero pattern is known.

use num_traits::{One, Zero};

use super::Frame;
use crate::error::{Error, Result};
use crate::macparams::SineScale;
use crate::rational::{q, Q};
use crate::rootsys::Weight;

/// A signed root `s·β` (β the positive root with index `root`) together
/// with the pairing `⟨ν, (sβ)∨⟩ ∈ {1, 2}` that selects its factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Factor {
    pub root: usize,
    pub sign: i8,
    pub pairing: u8,
}

/// Product of sine ratios with the number of exactly vanishing factors
/// in numerator and denominator recorded separately.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SineRatio {
    pub numerator: f64,
    pub denominator: f64,
    pub numerator_zeros: u32,
    pub denominator_zeros: u32,
}

impl Default for SineRatio {
    fn default() -> Self {
        Self {
            numerator: 1.0,
            denominator: 1.0,
            numerator_zeros: 0,
            denominator_zeros: 0,
        }
    }
}

impl SineRatio {
    fn push(&mut self, scale: SineScale, num: &Q, den: &Q) {
        if scale.is_zero(num) {
            self.numerator_zeros += 1;
        }
        if scale.is_zero(den) {
            self.denominator_zeros += 1;
        }
        self.numerator *= scale.sin::<f64>(num);
        self.denominator *= scale.sin::<f64>(den);
    }

    /// Value under the zero policy: a vanishing numerator factor wins (its
    /// zero persists for all `g`); a bare denominator zero is a pole.
    pub fn value(&self) -> Option<f64> {
        if self.numerator_zeros > 0 {
            Some(0.0)
        } else if self.denominator_zeros > 0 {
            None
        } else {
            Some(self.numerator / self.denominator)
        }
    }
}

/// Roots entering `V_ν`: all `α ∈ R̂` with `⟨ν, α∨⟩ > 0`.
pub(crate) fn v_factors(frame: &Frame, nu: &Weight) -> Vec<Factor> {
    frame
        .root_data()
        .iter()
        .enumerate()
        .filter_map(|(i, d)| {
            let p = nu.dot(&d.coroot).to_integer();
            match p {
                0 => None,
                p => Some(Factor {
                    root: i,
                    sign: p.signum() as i8,
                    pairing: p.unsigned_abs() as u8,
                }),
            }
        })
        .collect()
}

/// Roots entering `U_{ν,η}`: `α ∈ R̂_ν` with `⟨η, α∨⟩ > 0`.
pub(crate) fn u_factors(frame: &Frame, nu: &Weight, eta: &Weight) -> Vec<Factor> {
    frame
        .root_data()
        .iter()
        .enumerate()
        .filter_map(|(i, d)| {
            if !nu.dot(&d.coroot).is_zero() {
                return None;
            }
            let p = eta.dot(&d.coroot).to_integer();
            match p {
                0 => None,
                p => Some(Factor {
                    root: i,
                    sign: p.signum() as i8,
                    pairing: p.unsigned_abs() as u8,
                }),
            }
        })
        .collect()
}

/// `⟨x, (sβ)∨⟩` with `x = ρ_g + μ`, from precomputed pairings of `μ`.
fn shifted(frame: &Frame, f: &Factor, mu_pairing: &[Q]) -> Q {
    let y = frame.rho_pairings()[f.root] + mu_pairing[f.root];
    if f.sign < 0 {
        -y
    } else {
        y
    }
}

pub(crate) fn eval_v(frame: &Frame, factors: &[Factor], mu_pairing: &[Q]) -> SineRatio {
    let mut out = SineRatio::default();
    let one = Q::one();
    for f in factors {
        let d = &frame.root_data()[f.root];
        let y = shifted(frame, f, mu_pairing);
        out.push(d.scale, &(y + d.g), &y);
        if f.pairing == 2 {
            out.push(d.scale, &(y + one + d.g), &(y + one));
        }
    }
    out
}

pub(crate) fn eval_u(frame: &Frame, factors: &[Factor], mu_pairing: &[Q]) -> SineRatio {
    let mut out = SineRatio::default();
    let one = Q::one();
    for f in factors {
        let d = &frame.root_data()[f.root];
        let y = shifted(frame, f, mu_pairing);
        out.push(d.scale, &(y + d.g), &y);
        if f.pairing == 2 {
            out.push(d.scale, &(y + one - d.g), &(y + one));
        }
    }
    out
}

/// Numerator and denominator of `V_ν(ρ_g + μ)` with zero counts.
pub fn coefficient_v_ratio(frame: &Frame, nu: &Weight, mu: &Weight) -> SineRatio {
    eval_v(frame, &v_factors(frame, nu), &frame.pairings(mu))
}

/// `V_ν(ρ_g + μ)`. A vanishing denominator with non-vanishing numerator
/// is reported as an invariant violation.
pub fn coefficient_v(frame: &Frame, nu: &Weight, mu: &Weight) -> Result<f64> {
    let r = coefficient_v_ratio(frame, nu, mu);
    r.value().ok_or_else(|| {
        Error::Invariant(format!(
            "denominator of V_{nu} vanishes at the grid point {mu} with non-zero numerator"
        ))
    })
}

/// Outcome of `U_{ν,η}` on the grid: either a finite value or a term
/// dropped from the primed sum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum UCoefficient {
    Value(f64),
    /// Denominator vanishes. The counts let callers flag terms where the
    /// companion numerator zeros do not match the poles.
    Omitted {
        numerator_zeros: u32,
        denominator_zeros: u32,
    },
}

impl UCoefficient {
    pub fn is_omitted(&self) -> bool {
        matches!(self, UCoefficient::Omitted { .. })
    }

    /// Contribution to the primed sum.
    pub fn contribution(&self) -> f64 {
        match self {
            UCoefficient::Value(v) => *v,
            UCoefficient::Omitted { .. } => 0.0,
        }
    }
}

pub(crate) fn classify_u(r: SineRatio) -> UCoefficient {
    if r.denominator_zeros > 0 {
        UCoefficient::Omitted {
            numerator_zeros: r.numerator_zeros,
            denominator_zeros: r.denominator_zeros,
        }
    } else if r.numerator_zeros > 0 {
        UCoefficient::Value(0.0)
    } else {
        UCoefficient::Value(r.numerator / r.denominator)
    }
}

/// `U_{ν,η}(ρ_g + μ)`, or `Omitted` exactly when its denominator vanishes.
pub fn coefficient_u(frame: &Frame, nu: &Weight, eta: &Weight, mu: &Weight) -> UCoefficient {
    classify_u(eval_u(
        frame,
        &u_factors(frame, nu, eta),
        &frame.pairings(mu),
    ))
}

/// The exact omission criterion for `U_{ν,η}` at `μ`: some `α ∈ R̂_ν` with
/// `⟨η,α∨⟩ = 2` and either `⟨μ,α∨⟩ = 0, ⟨ρ̂_g,α∨⟩ = −1` or
/// `⟨μ,α∨⟩ = m_α c, ⟨ρ̂_g,α∨⟩ = m_α h_g − 1`.
pub(crate) fn u_omission_criterion(frame: &Frame, nu: &Weight, eta: &Weight, mu: &Weight) -> bool {
    let spec = frame.spec();
    let mu_p = frame.pairings(mu);
    u_factors(frame, nu, eta)
        .iter()
        .filter(|f| f.pairing == 2)
        .any(|f| {
            let d = &frame.root_data()[f.root];
            let s = q(f.sign as i64);
            let m = q(d.m);
            let mu_a = s * mu_p[f.root];
            let rho_a = s * frame.rho_pairings()[f.root];
            (mu_a.is_zero() && rho_a == -Q::one())
                || (mu_a == m * q(spec.c()) && rho_a == m * spec.h_g() - Q::one())
        })
}

/// Companion conditions under which the numerator of `U_{ν,η}` must vanish:
/// some `α ∈ R̂_ν` with `⟨η,α∨⟩ = 2` and either `⟨μ,α∨⟩ = 0` with `α`
/// negative, or `⟨μ,α∨⟩ = m_α c`.
pub(crate) fn u_numerator_companion(frame: &Frame, nu: &Weight, eta: &Weight, mu: &Weight) -> bool {
    let spec = frame.spec();
    let mu_p = frame.pairings(mu);
    u_factors(frame, nu, eta)
        .iter()
        .filter(|f| f.pairing == 2)
        .any(|f| {
            let d = &frame.root_data()[f.root];
            let mu_a = q(f.sign as i64) * mu_p[f.root];
            (mu_a.is_zero() && f.sign < 0) || mu_a == q(d.m) * q(spec.c())
        })
}
