//! The `g = 1` degeneration: alternating Weyl sums on the truncated grid.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::macparams::{mass_tables, AdmissiblePair, Multiplicity, PairKind, UnitarySpec};
use crate::numeric::cis_pi;
use crate::operators::{Side, TruncatedCone};
use crate::rational::{determinant, q, to_f64, Q};
use crate::rootsys::Weight;

/// `χ_λ(x) = Σ_{w∈W} det(w) e^{wλ}(x)` for regular dominant `λ`.
pub fn weyl_character(spec: &UnitarySpec, lambda: &Weight, x: &Weight) -> Complex64 {
    let r = spec.pair().roots();
    r.weyl_orbit(lambda)
        .iter()
        .map(|nu| cis_pi(&spec.exp_phase(nu, x)) * r.chamber_sign(nu) as f64)
        .sum()
}

fn to_vec(w: &Weight) -> Vec<f64> {
    w.coords().iter().map(to_f64).collect()
}

/// `χ_{ρ+λ}(ρ̂+μ)`, rows `μ`, columns `λ`. Same sums as [`weyl_character`]
/// with the pairings taken in floating point, which keeps the larger
/// Weyl groups affordable.
pub(crate) fn character_table(
    spec: &UnitarySpec,
    cone: &TruncatedCone,
    grid: &TruncatedCone,
) -> DMatrix<Complex64> {
    let pair = spec.pair();
    let r = pair.roots();
    let k = to_f64(&(q(2) / (pair.u_phi() * spec.level())));
    let orbits: Vec<Vec<(Vec<f64>, f64)>> = cone
        .weights()
        .iter()
        .map(|l| {
            r.weyl_orbit(&(r.rho() + l))
                .iter()
                .map(|nu| (to_vec(nu), r.chamber_sign(nu) as f64))
                .collect()
        })
        .collect();
    let rho_hat = pair.roots_hat().rho();
    let rows: Vec<Vec<Complex64>> = grid
        .weights()
        .par_iter()
        .map(|mu| {
            let x = to_vec(&(rho_hat + mu));
            orbits
                .iter()
                .map(|orbit| {
                    orbit
                        .iter()
                        .map(|(nu, sign)| {
                            let t: f64 = nu.iter().zip(&x).map(|(a, b)| a * b).sum();
                            let (s, c) = (std::f64::consts::PI * k * t).sin_cos();
                            Complex64::new(c * sign, s * sign)
                        })
                        .sum()
                })
                .collect()
        })
        .collect();
    DMatrix::from_fn(grid.len(), cone.len(), |m, l| rows[m][l])
}

/// `Ind(R, R̂)`: `Ind(R)` when `R` is simply laced or `R̂ = R∨`, else
/// `m^{n_ϑ} Ind(R)` with `n_ϑ` the number of short simple roots.
pub fn pair_index(pair: &AdmissiblePair) -> i64 {
    let r = pair.roots();
    if r.is_simply_laced() || pair.kind() == PairKind::Dual {
        r.index()
    } else {
        pair.m().pow(r.number_of_short_simple_roots() as u32) * r.index()
    }
}

/// `|P / u_φ Q̂∨|` as the determinant of the basis `u_φ α̂_j∨` written in
/// fundamental-weight coordinates.
fn lattice_index(pair: &AdmissiblePair) -> i64 {
    let r = pair.roots();
    let rh = pair.roots_hat();
    let rows: Vec<Vec<Q>> = r
        .simple_coroots()
        .iter()
        .map(|ai| {
            rh.simple_coroots()
                .iter()
                .map(|bj| pair.u_phi() * bj.dot(ai))
                .collect()
        })
        .collect();
    determinant(&rows).abs().to_integer()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeylReport {
    pub hbar: i64,
    pub index: i64,
    pub index_lattice: i64,
    /// `Ind(R,R̂)(ℏ+c)^n`.
    pub diagonal_expected: f64,
    /// Largest relative deviation of a diagonal sum from the expectation.
    pub diagonal_defect: f64,
    /// Largest off-diagonal sum divided by `(ℏ+c)^n`.
    pub off_diagonal: f64,
    /// Relative defect of `N_c Π sin κ_α⟨ρ,α∨⟩ = (Ind(R,R̂)/Ind(R))(ℏ+c)^n`
    /// read literally.
    pub trig_literal_defect: f64,
    /// Relative defect of the same identity with `Π 4 sin² κ_α⟨ρ,α∨⟩`.
    pub trig_corrected_defect: f64,
}

pub fn weyl_orthogonality_check(pair: &AdmissiblePair, c: i64) -> Result<WeylReport> {
    let spec = UnitarySpec::new(
        pair.clone(),
        Multiplicity::equal(Q::from_integer(1))?,
        c,
        true,
    )?;
    let r = pair.roots();
    let hbar_q = r.rho().dot(&pair.psi_hat_vee()) + q(1);
    if hbar_q != spec.h_g() {
        return Err(Error::Invariant(format!(
            "ℏ = {hbar_q} differs from h_g = {} at g = 1",
            spec.h_g()
        )));
    }
    let hbar = hbar_q.to_integer();
    let cone = TruncatedCone::new(&spec, Side::P);
    let grid = TruncatedCone::new(&spec, Side::PHat);
    let rho = r.rho();
    let x = character_table(&spec, &cone, &grid);
    let gram = &x * x.adjoint();
    let n = r.rank() as i32;
    let scale = ((hbar + c) as f64).powi(n);
    let index = pair_index(pair);
    let diagonal_expected = index as f64 * scale;
    let mut diagonal_defect: f64 = 0.0;
    let mut off_diagonal: f64 = 0.0;
    for i in 0..grid.len() {
        for j in 0..grid.len() {
            let v = gram[(i, j)];
            if i == j {
                diagonal_defect =
                    diagonal_defect.max((v - diagonal_expected).norm() / diagonal_expected);
            } else {
                off_diagonal = off_diagonal.max(v.norm() / scale);
            }
        }
    }
    let n_c: f64 = mass_tables()?.evaluate(&spec)?;
    let mut prod_sin = 1.0;
    let mut prod_4sin2 = 1.0;
    for d in spec.r_root_data() {
        let s: f64 = d.scale.sin(&rho.dot(&d.coroot));
        prod_sin *= s;
        prod_4sin2 *= 4.0 * s * s;
    }
    let target = to_f64(&Q::new(index, r.index())) * scale;
    Ok(WeylReport {
        hbar,
        index,
        index_lattice: lattice_index(pair),
        diagonal_expected,
        diagonal_defect,
        off_diagonal,
        trig_literal_defect: (n_c * prod_sin - target).abs() / target,
        trig_corrected_defect: (n_c * prod_4sin2 - target).abs() / target,
    })
}
