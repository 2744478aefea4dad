//! Orthogonality, norms, the S-matrix, duality and Pieri residuals.

use std::fmt::Write;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::construct::Construction;
use super::weights::{cone_weights, frame_specialization, total_mass};
use crate::error::{Error, Result};
use crate::operators::{eigen_symbol, finite_operator, GridFunction};
use crate::rational::format_rational;
use crate::rootsys::Weight;

/// `⟨f, h⟩ = Σ_μ f(μ) conj(h(μ)) w(μ)`.
pub fn discrete_inner_product(f: &GridFunction, h: &GridFunction, w: &[f64]) -> Complex64 {
    f.iter()
        .zip(h.iter())
        .zip(w)
        .map(|((a, b), w)| a * b.conj() * *w)
        .sum()
}

/// Weights, total masses and normalized polynomial values.
#[derive(Clone, Debug)]
pub struct OrthogonalityData {
    /// `Δ(λ)` in `P_c` order.
    pub delta: Vec<f64>,
    /// `Δ̂(μ)` in `P̂_c` order.
    pub delta_hat: Vec<f64>,
    pub n0: f64,
    pub n0_hat: f64,
    /// `c_λ = 1/p_λ(ρ̂_g)` from the product formula.
    pub c_lambda: Vec<f64>,
    /// `P_λ(ρ̂_g + μ)`, rows `μ`, columns `λ`.
    pub normalized: DMatrix<Complex64>,
    /// `max |p_λ(ρ̂_g) − formula| / formula` over `λ`.
    pub specialization_defect: f64,
}

impl OrthogonalityData {
    pub fn new(con: &Construction) -> Result<Self> {
        let delta = cone_weights(&con.cone)?;
        let delta_hat = cone_weights(&con.grid)?;
        let zero = con
            .grid
            .position(&Weight::zero(con.grid.weights()[0].dim()))
            .ok_or_else(|| Error::Invariant("0 missing from P̂_c".into()))?;
        let mut specialization_defect: f64 = 0.0;
        let mut c_lambda = Vec::with_capacity(con.len());
        for (j, lambda) in con.cone.weights().iter().enumerate() {
            let formula = frame_specialization(con.cone.frame(), lambda);
            if !(formula > 0.0) {
                return Err(Error::Invariant(format!("p_λ(ρ̂_g) ≤ 0 at {lambda}")));
            }
            let direct = con.values[(zero, j)];
            specialization_defect = specialization_defect.max((direct - formula).norm() / formula);
            c_lambda.push(1.0 / formula);
        }
        let mut normalized = con.values.clone();
        for (j, c) in c_lambda.iter().enumerate() {
            normalized.column_mut(j).scale_mut(*c);
        }
        Ok(Self {
            n0: total_mass(&delta),
            n0_hat: total_mass(&delta_hat),
            delta,
            delta_hat,
            c_lambda,
            normalized,
            specialization_defect,
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct OrthogonalityReport {
    /// `max_{λ≠λ'} |⟨P_λ, P_λ'⟩_Δ̂| / N_0`.
    pub off_diagonal: f64,
    /// `max_{μ≠μ'} |Σ_λ P_λ(μ) conj P_λ(μ') Δ(λ)| / N_0`.
    pub dual_off_diagonal: f64,
    /// `max_λ |Δ(λ)⟨P_λ,P_λ⟩ − N_0| / N_0`.
    pub norm_residual: f64,
    /// `max_μ |Δ̂(μ) Σ_λ |P_λ(μ)|² Δ(λ) − N_0| / N_0`.
    pub dual_norm_residual: f64,
    /// `|N_0 − N̂_0| / N_0`.
    pub mass_symmetry: f64,
}

pub fn orthogonality_report(data: &OrthogonalityData) -> OrthogonalityReport {
    let p = &data.normalized;
    let n = p.ncols();
    let n0 = data.n0;
    let mut out = OrthogonalityReport {
        mass_symmetry: (data.n0 - data.n0_hat).abs() / n0,
        ..Default::default()
    };
    // Gram matrices in both directions.
    let wp = DMatrix::from_fn(n, n, |i, j| p[(i, j)] * data.delta_hat[i]);
    let gram = p.adjoint() * &wp;
    let vp = DMatrix::from_fn(n, n, |i, j| p[(i, j)] * data.delta[j]);
    let dual = &vp * p.adjoint();
    for a in 0..n {
        for b in 0..n {
            if a == b {
                out.norm_residual = out
                    .norm_residual
                    .max((data.delta[a] * gram[(a, a)].re - n0).abs() / n0);
                out.dual_norm_residual = out
                    .dual_norm_residual
                    .max((data.delta_hat[a] * dual[(a, a)].re - n0).abs() / n0);
            } else {
                out.off_diagonal = out.off_diagonal.max(gram[(a, b)].norm() / n0);
                out.dual_off_diagonal = out.dual_off_diagonal.max(dual[(a, b)].norm() / n0);
            }
        }
    }
    out
}

pub fn norm_identity_residual(data: &OrthogonalityData) -> f64 {
    orthogonality_report(data).norm_residual
}

/// `S_{λ,μ} = (Δ(λ)Δ̂(μ)/N_0)^{1/2} P_λ(ρ̂_g+μ)`, rows `λ`, columns `μ`.
#[derive(Clone, Debug)]
pub struct SMatrix {
    pub matrix: DMatrix<Complex64>,
    /// `max(‖S†S − I‖_max, ‖SS† − I‖_max)`.
    pub unitarity_defect: f64,
}

pub fn s_matrix(data: &OrthogonalityData) -> SMatrix {
    let n = data.delta.len();
    let matrix = DMatrix::from_fn(n, n, |l, m| {
        data.normalized[(m, l)] * (data.delta[l] * data.delta_hat[m] / data.n0).sqrt()
    });
    let id = DMatrix::<Complex64>::identity(n, n);
    let d1 = (matrix.adjoint() * &matrix - &id)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let d2 = (&matrix * matrix.adjoint() - &id)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    SMatrix {
        matrix,
        unitarity_defect: d1.max(d2),
    }
}

/// `max |Ŝ_{μ,λ} − S_{λ,μ}|` with `Ŝ` built from the swapped pair.
pub fn duality_defect(
    con: &Construction,
    s: &SMatrix,
    swapped: &Construction,
    s_hat: &SMatrix,
) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (l, lambda) in con.cone.weights().iter().enumerate() {
        let lh = swapped
            .grid
            .position(lambda)
            .ok_or_else(|| Error::Invariant(format!("{lambda} missing from the swapped grid")))?;
        for (m, mu) in con.grid.weights().iter().enumerate() {
            let mh = swapped
                .cone
                .position(mu)
                .ok_or_else(|| Error::Invariant(format!("{mu} missing from the swapped cone")))?;
            worst = worst.max((s_hat.matrix[(mh, lh)] - s.matrix[(l, m)]).norm());
        }
    }
    Ok(worst)
}

/// Residual of `Ê_ω P_λ = Σ V̂_ν(ρ_g+λ) Σ' Û_{ν,η}(ρ_g+λ) P_{λ+ν}` over all
/// `λ ∈ P_c` and grid points, relative to `max|Ê_ω| · max|P|`.
pub fn pieri_residual(con: &Construction, data: &OrthogonalityData, omega: &Weight) -> Result<f64> {
    let frame = con.cone.frame();
    let op = finite_operator(&con.cone, omega)?;
    let symbol = eigen_symbol(frame, omega)?;
    let e: Vec<Complex64> = con
        .grid
        .weights()
        .iter()
        .map(|mu| symbol.eval(frame, mu))
        .collect();
    // rows λ, columns μ
    let p = data.normalized.transpose();
    let a = op.matrix.map(|x| Complex64::new(x, 0.0));
    let rhs = &a * &p;
    let n = p.nrows();
    let e_max = e.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let p_max = p.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut worst: f64 = 0.0;
    for l in 0..n {
        for m in 0..n {
            worst = worst.max((e[m] * p[(l, m)] - rhs[(l, m)]).norm());
        }
    }
    Ok(worst / (e_max * p_max).max(1e-300))
}

/// Per-λ norms as CSV: `weight,delta,norm,expected,relative`, where `norm`
/// is `⟨P_λ, P_λ⟩_Δ̂` for the normalized polynomial and `expected` is
/// `N_0 / Δ(λ)`. Weights are in fundamental coordinates, space separated.
pub fn norms_csv(con: &Construction, data: &OrthogonalityData) -> String {
    let r = con.cone.frame().roots();
    let mut s = String::from("weight,delta,norm,expected,relative\n");
    for (l, lambda) in con.cone.weights().iter().enumerate() {
        let norm: f64 = (0..data.delta_hat.len())
            .map(|m| data.delta_hat[m] * data.normalized[(m, l)].norm_sqr())
            .sum();
        let expected = data.n0 / data.delta[l];
        let coords: Vec<String> = r
            .fundamental_coords(lambda)
            .iter()
            .map(format_rational)
            .collect();
        writeln!(
            s,
            "{},{:.15e},{:.15e},{:.15e},{:.3e}",
            coords.join(" "),
            data.delta[l],
            norm,
            expected,
            (norm - expected).abs() / expected
        )
        .unwrap();
    }
    s
}
