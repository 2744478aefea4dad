//! Exhaustive checks of the exact statements the finite operators rest on:
//! moment bounds, regularity and boundary vanishing of `V`, the pole and
//! zero structure of `U`, the `Δ̂` recurrence and adjointness.

use serde::{Deserialize, Serialize};

use super::coefficients::{
    classify_u, eval_u, eval_v, u_factors, u_numerator_companion, u_omission_criterion, v_factors,
};
use super::matrix::{adjointness_residual, delta_recurrence_residual};
use super::{Frame, Side, TruncatedCone};
use crate::error::Result;
use crate::macparams::{is_regular_g, UnitarySpec};
use crate::rational::q;

/// Tolerances of the numeric side of the boundary check.
pub const BC_ZERO: f64 = 1e-10;
pub const BC_NONZERO: f64 = 1e-6;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    /// `(λ, α)` pairs checked against the moment bounds, both sides.
    pub moment_pairs: usize,
    pub moment_violations: Vec<String>,
    /// `(ω, ν, μ)` triples checked for boundary vanishing.
    pub bc_triples: usize,
    /// Exact zero pattern of the `V` numerator disagrees with `μ+ν ∉ P̂_c`.
    pub bc_exact_violations: usize,
    /// Numerator value on the wrong side of `BC_ZERO` / `BC_NONZERO`.
    pub bc_numeric_violations: usize,
    /// Smallest `|numerator|` among shifts that stay in the cone.
    pub bc_min_nonzero: f64,
    /// Largest `|numerator|` among shifts that leave the cone.
    pub bc_max_zero: f64,
    /// In-cone shifts whose `V` denominator vanishes.
    pub regular_v_violations: usize,
    /// `(ω, ν, η, μ)` quadruples checked for the structure of `U`.
    pub u_quadruples: usize,
    /// Omission disagrees with the exact pole criterion.
    pub denom_u_mismatches: usize,
    /// Companion conditions hold but the numerator does not vanish.
    pub num_u_violations: usize,
    /// Companion conditions exercised (non-regular `g` only).
    pub num_u_cases: usize,
    pub g_regular: bool,
    /// Omitted terms at regular `g` (must be zero).
    pub regular_omissions: usize,
    pub recurrence_residual: f64,
    pub recurrence_pairs: usize,
    pub recurrence_non_positive: usize,
    pub adjointness_residual: f64,
}

impl LemmaReport {
    pub fn exact_ok(&self) -> bool {
        self.moment_violations.is_empty()
            && self.bc_exact_violations == 0
            && self.bc_numeric_violations == 0
            && self.regular_v_violations == 0
            && self.denom_u_mismatches == 0
            && self.num_u_violations == 0
            && self.regular_omissions == 0
            && self.recurrence_non_positive == 0
    }
}

/// `⟨λ,α∨⟩ ≤ m_α⟨λ,bound⟩ ≤ m_α c` and `g_α ≤ ⟨ρ_g,α∨⟩ ≤ m_α h_g − g_α` on
/// one side of the pair.
fn moment_bounds(cone: &TruncatedCone, out: &mut LemmaReport) {
    let frame = cone.frame();
    let spec = frame.spec();
    let c = q(spec.c());
    let h = spec.h_g();
    for (k, d) in frame.root_data().iter().enumerate() {
        let m = q(d.m);
        let rho = frame.rho_pairings()[k];
        if !(d.g <= rho && rho <= m * h - d.g) {
            out.moment_violations.push(format!(
                "{}: ⟨ρ_g,α∨⟩ = {rho} outside [{}, {}]",
                d.root,
                d.g,
                m * h - d.g
            ));
        }
        for lambda in cone.weights() {
            out.moment_pairs += 1;
            let a = lambda.dot(&d.coroot);
            let b = m * lambda.dot(frame.bound());
            if !(a <= b && b <= m * c) {
                out.moment_violations.push(format!(
                    "{lambda}, {}: {a} ≤ {b} ≤ {} fails",
                    d.root,
                    m * c
                ));
            }
        }
    }
}

fn operator_lemmas(cone: &TruncatedCone, out: &mut LemmaReport) -> Result<()> {
    let frame: &Frame = cone.frame();
    let r = frame.roots();
    for omega in frame.small_weights() {
        for nu in r.saturated_set(&omega) {
            let vf = v_factors(frame, &nu);
            let (_, w) = r.dominant_representative(&nu);
            let etas = r.parabolic_stabilizer_orbit(&nu, &w.apply_inverse(r, &omega));
            for mu in cone.weights() {
                let mu_p = frame.pairings(mu);
                let inside = cone.contains(&(mu + &nu));
                let v = eval_v(frame, &vf, &mu_p);
                out.bc_triples += 1;
                if (v.numerator_zeros > 0) == inside {
                    out.bc_exact_violations += 1;
                }
                let num = v.numerator.abs();
                if inside {
                    out.bc_min_nonzero = out.bc_min_nonzero.min(num);
                    if num < BC_NONZERO {
                        out.bc_numeric_violations += 1;
                    }
                    if v.denominator_zeros > 0 {
                        out.regular_v_violations += 1;
                    }
                } else {
                    out.bc_max_zero = out.bc_max_zero.max(num);
                    if num > BC_ZERO {
                        out.bc_numeric_violations += 1;
                    }
                    continue;
                }
                for eta in &etas {
                    out.u_quadruples += 1;
                    let u_ratio = eval_u(frame, &u_factors(frame, &nu, eta), &mu_p);
                    let u = classify_u(u_ratio);
                    if u.is_omitted() != u_omission_criterion(frame, &nu, eta, mu) {
                        out.denom_u_mismatches += 1;
                    }
                    if out.g_regular && u.is_omitted() {
                        out.regular_omissions += 1;
                    }
                    if u_numerator_companion(frame, &nu, eta, mu) {
                        out.num_u_cases += 1;
                        if u_ratio.numerator_zeros == 0 {
                            out.num_u_violations += 1;
                        }
                    }
                }
            }
        }
        let rec = delta_recurrence_residual(cone, &omega)?;
        out.recurrence_residual = out.recurrence_residual.max(rec.residual);
        out.recurrence_pairs += rec.pairs;
        out.recurrence_non_positive += rec.non_positive;
        out.adjointness_residual = out
            .adjointness_residual
            .max(adjointness_residual(cone, &omega)?);
    }
    Ok(())
}

/// Runs every lemma check for one configuration. The operator checks use
/// the grid side `P̂_c`; the moment bounds are checked on both sides.
pub fn lemma_checks(spec: &UnitarySpec) -> Result<LemmaReport> {
    let mut out = LemmaReport {
        g_regular: is_regular_g(spec).regular,
        bc_min_nonzero: f64::INFINITY,
        ..Default::default()
    };
    let cone = TruncatedCone::new(spec, Side::P);
    let grid = TruncatedCone::new(spec, Side::PHat);
    moment_bounds(&cone, &mut out);
    moment_bounds(&grid, &mut out);
    operator_lemmas(&grid, &mut out)?;
    Ok(out)
}
