//! Difference operators of the truncated lattice: the coefficients `V_ν`,
//! `U_{ν,η}`, the eigenvalue symbols `E_ω`, and the finite operator
//! matrices acting on functions supported on the truncated cone.

mod coefficients;
mod lemmas;
mod matrix;
mod spectrum;

#[cfg(test)]
mod tests;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use coefficients::{
    coefficient_u, coefficient_v, coefficient_v_ratio, SineRatio, UCoefficient,
};
pub use lemmas::{lemma_checks, LemmaReport, BC_NONZERO, BC_ZERO};
pub use matrix::{
    adjointness_residual, delta_recurrence_residual, finite_operator, FiniteOperator,
    RecurrenceCheck,
};
pub use spectrum::{eigen_symbol, eigenvalue_e, epsilon, EigenSymbol};

use crate::error::{Error, Result};
use crate::macparams::{RootDatum, UnitarySpec};
use crate::rational::Q;
use crate::rootsys::{bounded_dominant_coords, RootSystemData, Weight};

/// Which lattice a computation lives on. Operators built on `PHat` have
/// coefficients over `R̂` and act on functions of `ρ̂_g + P̂_c`; operators on
/// `P` are their duals over `R` acting on `ρ_g + P_c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    P,
    PHat,
}

impl Side {
    pub fn dual(self) -> Side {
        match self {
            Side::P => Side::PHat,
            Side::PHat => Side::P,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::P => "P",
            Side::PHat => "P_hat",
        })
    }
}

/// Complex values on the cone positions, read as `f(ρ̂_g + μ)`.
pub type GridFunction = DVector<Complex64>;

/// The data of one side bundled for coefficient formulas: root system,
/// per-root multiplicities and scales, the shifted origin, and the
/// coroot defining the truncation.
#[derive(Clone, Debug)]
pub struct Frame {
    spec: UnitarySpec,
    side: Side,
    roots: Arc<RootSystemData>,
    data: Vec<RootDatum>,
    rho_pairing: Vec<Q>,
    rho_g: Weight,
    dual_rho_g: Weight,
    bound: Weight,
}

impl Frame {
    pub fn new(spec: &UnitarySpec, side: Side) -> Self {
        let pair = spec.pair();
        let (roots, data, rho_g, dual_rho_g, bound) = match side {
            Side::PHat => (
                Arc::clone(&pair.r_hat().roots),
                spec.hat_root_data(),
                spec.rho_hat_g().clone(),
                spec.rho_g().clone(),
                pair.phi_hat_vee(),
            ),
            Side::P => (
                Arc::clone(&pair.r().roots),
                spec.r_root_data(),
                spec.rho_g().clone(),
                spec.rho_hat_g().clone(),
                pair.psi_hat_vee(),
            ),
        };
        let rho_pairing = data.iter().map(|d| rho_g.dot(&d.coroot)).collect();
        Self {
            spec: spec.clone(),
            side,
            roots,
            data,
            rho_pairing,
            rho_g,
            dual_rho_g,
            bound,
        }
    }

    pub fn spec(&self) -> &UnitarySpec {
        &self.spec
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn roots(&self) -> &RootSystemData {
        &self.roots
    }

    /// Positive roots of this side with their multiplicities and scales.
    pub fn root_data(&self) -> &[RootDatum] {
        &self.data
    }

    /// `⟨ρ_g, α∨⟩` for each positive root (`ρ̂_g` on the hat side).
    pub fn rho_pairings(&self) -> &[Q] {
        &self.rho_pairing
    }

    /// The shifted origin of this side's grid.
    pub fn rho_g(&self) -> &Weight {
        &self.rho_g
    }

    /// The shifted origin of the opposite side, where eigenvalues of this
    /// side's operators are evaluated.
    pub fn dual_rho_g(&self) -> &Weight {
        &self.dual_rho_g
    }

    /// Coroot `ψ̂∨` (side `P`) or `φ̂∨` (side `P̂`) bounding the cone.
    pub fn bound(&self) -> &Weight {
        &self.bound
    }

    pub fn in_cone(&self, mu: &Weight) -> bool {
        self.roots.is_dominant(mu)
            && self.roots.in_weight_lattice(mu)
            && mu.dot(&self.bound) <= Q::from_integer(self.spec.c())
    }

    /// Nonzero small dominant weights of this side.
    pub fn small_weights(&self) -> Vec<Weight> {
        self.roots.small_weights()
    }

    pub(crate) fn require_small(&self, omega: &Weight) -> Result<()> {
        if !self.roots.is_dominant(omega) || !self.roots.classify_weight(omega).is_small() {
            return Err(Error::Domain(format!(
                "{omega} is not a small dominant weight"
            )));
        }
        Ok(())
    }

    /// `⟨μ, α∨⟩` for every positive root.
    pub(crate) fn pairings(&self, mu: &Weight) -> Vec<Q> {
        self.data.iter().map(|d| mu.dot(&d.coroot)).collect()
    }
}

/// The truncated dominant cone `P_c` or `P̂_c` in a fixed order refining
/// dominance (height ascending, then fundamental coordinates).
#[derive(Clone, Debug)]
pub struct TruncatedCone {
    frame: Frame,
    weights: Vec<Weight>,
    index: HashMap<Weight, usize>,
}

impl TruncatedCone {
    pub fn new(spec: &UnitarySpec, side: Side) -> Self {
        let frame = Frame::new(spec, side);
        let r = frame.roots();
        let marks: Vec<i64> = r
            .fundamental_weights()
            .iter()
            .map(|w| w.dot(frame.bound()).to_integer())
            .collect();
        let mut weights: Vec<Weight> = bounded_dominant_coords(&marks, spec.c())
            .into_iter()
            .map(|c| r.from_fundamental_ints(&c))
            .collect();
        r.sort_by_height(&mut weights);
        let index = weights
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        Self {
            frame,
            weights,
            index,
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn spec(&self) -> &UnitarySpec {
        &self.frame.spec
    }

    pub fn side(&self) -> Side {
        self.frame.side
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn position(&self, w: &Weight) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.index.contains_key(w)
    }
}
