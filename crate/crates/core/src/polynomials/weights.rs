//! The discrete weights `Δ`, `Δ̂` and the principal specialization.

use num_traits::One;

use crate::error::{Error, Result};
use crate::macparams::{pochhammer, UnitarySpec};
use crate::numeric::{DoubleDouble, Precision, Real};
use crate::operators::{Frame, Side, TruncatedCone};
use crate::rational::Q;
use crate::rootsys::Weight;

fn delta_in<R: Real>(frame: &Frame, lambda: &Weight) -> R {
    let one = Q::one();
    let mut acc = R::one();
    for (d, rho) in frame.root_data().iter().zip(frame.rho_pairings()) {
        let l = lambda.dot(&d.coroot).to_integer();
        if l == 0 {
            continue;
        }
        let top: R = d.scale.sin(&(rho + lambda.dot(&d.coroot)));
        let bottom: R = d.scale.sin(rho);
        let up: R = pochhammer(&(rho + d.g), d.scale, l);
        let down: R = pochhammer(&(rho + one - d.g), d.scale, l);
        acc = acc * (top / bottom) * (up / down);
    }
    acc
}

/// `Δ(λ)` on side `P` (product over `R⁺` at `ρ_g`) or `Δ̂(μ)` on side `P̂`.
pub fn delta_weight(spec: &UnitarySpec, lambda: &Weight, side: Side) -> Result<f64> {
    let frame = Frame::new(spec, side);
    if !frame.in_cone(lambda) {
        return Err(Error::Domain(format!(
            "{lambda} is not in the truncated cone on side {side}"
        )));
    }
    Ok(frame_delta(&frame, lambda))
}

pub(crate) fn frame_delta(frame: &Frame, lambda: &Weight) -> f64 {
    match frame.spec().precision() {
        Precision::Double => delta_in::<f64>(frame, lambda),
        Precision::Extended => delta_in::<DoubleDouble>(frame, lambda).to_f64(),
    }
}

/// Weights of every cone point, in cone order.
pub fn cone_weights(cone: &TruncatedCone) -> Result<Vec<f64>> {
    let w: Vec<f64> = cone
        .weights()
        .iter()
        .map(|l| frame_delta(cone.frame(), l))
        .collect();
    if let Some((i, v)) = w
        .iter()
        .enumerate()
        .find(|(_, v)| !(**v > 0.0) || !v.is_finite())
    {
        return Err(Error::Invariant(format!(
            "weight at {} is not positive: {v:e}",
            cone.weights()[i]
        )));
    }
    Ok(w)
}

/// Sum of the weights, accumulated in double-double regardless of the
/// working precision so the total does not depend on summation order noise.
pub fn total_mass(weights: &[f64]) -> f64 {
    weights
        .iter()
        .fold(DoubleDouble::from_f64(0.0), |acc, &w| {
            acc + DoubleDouble::from_f64(w)
        })
        .to_f64()
}

/// `p_λ(ρ̂_g) = Π_{α∈R⁺} (⟨ρ_g,α∨⟩+g_α : κ_α)_l / (⟨ρ_g,α∨⟩ : κ_α)_l`,
/// `l = ⟨λ,α∨⟩`.
pub fn principal_specialization(spec: &UnitarySpec, lambda: &Weight) -> Result<f64> {
    let frame = Frame::new(spec, Side::P);
    if !frame.in_cone(lambda) {
        return Err(Error::Domain(format!("{lambda} is not in P_c")));
    }
    Ok(frame_specialization(&frame, lambda))
}

pub(crate) fn frame_specialization(frame: &Frame, lambda: &Weight) -> f64 {
    let mut acc = 1.0;
    for (d, rho) in frame.root_data().iter().zip(frame.rho_pairings()) {
        let l = lambda.dot(&d.coroot).to_integer();
        let up: f64 = pochhammer(&(rho + d.g), d.scale, l);
        let down: f64 = pochhammer(rho, d.scale, l);
        acc *= up / down;
    }
    acc
}

/// `c_λ = 1 / p_λ(ρ̂_g)`.
pub fn normalization_constant(spec: &UnitarySpec, lambda: &Weight) -> Result<f64> {
    Ok(1.0 / principal_specialization(spec, lambda)?)
}
