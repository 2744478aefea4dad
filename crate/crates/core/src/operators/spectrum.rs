//! Eigenvalue symbols `E_ω = m̂_ω + Σ_{μ<ω} ε_{ω,μ} m̂_μ`.

use std::sync::Arc;

use num_complex::Complex64;
use num_traits::Zero;

use super::Frame;
use crate::error::Result;
use crate::numeric::cis_pi;
use crate::rational::Q;
use crate::rootsys::Weight;

/// `ε_{ω,μ} = Σ_{η∈W_μω} Π_{α∈R̂_μ⁺, |⟨η,α∨⟩|=1} τ_α^{⟨η,α∨⟩}` with
/// `τ_α = exp(iκ_α g_α)`, the square root of `t_α`. This is the
/// normalization under which `E_ω(ρ_g+λ)` is the eigenvalue of `D_ω` built
/// from the sine factors `sin κ_α(y+g_α)/sin κ_α y`.
pub fn epsilon(frame: &Frame, omega: &Weight, mu: &Weight) -> Complex64 {
    let spec = frame.spec();
    let stab: Vec<_> = frame
        .root_data()
        .iter()
        .filter(|d| mu.dot(&d.coroot).is_zero())
        .collect();
    frame
        .roots()
        .parabolic_stabilizer_orbit(mu, omega)
        .iter()
        .map(|eta| {
            let phase: Q = stab
                .iter()
                .filter_map(|d| {
                    let k = eta.dot(&d.coroot).to_integer();
                    (k.abs() == 1).then(|| spec.t_phase(d.g, d.m, k) / 2)
                })
                .sum();
            cis_pi(&phase)
        })
        .sum()
}

/// `E_ω` as a list of monomials with their coefficients, ready to be
/// evaluated at many points.
#[derive(Clone, Debug)]
pub struct EigenSymbol {
    omega: Weight,
    terms: Vec<(Weight, Complex64, Arc<Vec<Weight>>)>,
}

pub fn eigen_symbol(frame: &Frame, omega: &Weight) -> Result<EigenSymbol> {
    frame.require_small(omega)?;
    let r = frame.roots();
    let terms = r
        .dominant_weights_below(omega)
        .into_iter()
        .rev()
        .map(|mu| {
            let eps = if &mu == omega {
                Complex64::new(1.0, 0.0)
            } else {
                epsilon(frame, omega, &mu)
            };
            let orbit = r.weyl_orbit(&mu);
            (mu, eps, orbit)
        })
        .collect();
    Ok(EigenSymbol {
        omega: omega.clone(),
        terms,
    })
}

impl EigenSymbol {
    pub fn omega(&self) -> &Weight {
        &self.omega
    }

    /// `(μ, ε_{ω,μ})` for every dominant `μ ≤ ω`, leading term first.
    pub fn coefficients(&self) -> impl Iterator<Item = (&Weight, Complex64)> {
        self.terms.iter().map(|(mu, e, _)| (mu, *e))
    }

    /// `E_ω(x)` at `x = ρ_g + λ` with `ρ_g` the opposite side's origin.
    pub fn eval(&self, frame: &Frame, lambda: &Weight) -> Complex64 {
        let x = frame.dual_rho_g() + lambda;
        let spec = frame.spec();
        self.terms
            .iter()
            .map(|(_, eps, orbit)| {
                let m: Complex64 = orbit.iter().map(|nu| cis_pi(&spec.exp_phase(nu, &x))).sum();
                eps * m
            })
            .sum()
    }
}

/// `E_ω(ρ_g + λ)` for `ω` small on this side and `λ` on the opposite one.
pub fn eigenvalue_e(frame: &Frame, omega: &Weight, lambda: &Weight) -> Result<Complex64> {
    Ok(eigen_symbol(frame, omega)?.eval(frame, lambda))
}
