//! Assembly of the finite operators `D_ω` on the truncated grid and the
//! residual checks that tie them to the weights `Δ̂`.

use std::fmt::Write as _;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::coefficients::{classify_u, eval_u, eval_v, u_factors, v_factors, Factor};
use super::{Frame, Side, TruncatedCone};
use crate::error::{Error, Result};
use crate::polynomials::cone_weights;
use crate::rational::format_rational;
use crate::rootsys::{Weight, WeightClass};

struct ShiftPlan {
    nu: Weight,
    v: Vec<Factor>,
    etas: Vec<Vec<Factor>>,
}

fn plan(frame: &Frame, omega: &Weight) -> Result<Vec<ShiftPlan>> {
    frame.require_small(omega)?;
    let r = frame.roots();
    Ok(r.saturated_set(omega)
        .into_iter()
        .map(|nu| {
            let (_, w) = r.dominant_representative(&nu);
            let start = w.apply_inverse(r, omega);
            let etas = r
                .parabolic_stabilizer_orbit(&nu, &start)
                .iter()
                .map(|eta| u_factors(frame, &nu, eta))
                .collect();
            ShiftPlan {
                v: v_factors(frame, &nu),
                nu,
                etas,
            }
        })
        .collect())
}

/// Matrix of `D_ω` on the cone. Entry `(i, j)` is the coefficient of
/// `f(μ_j)` in `(D_ω f)(μ_i)`, so a grid function transforms as `A f`.
#[derive(Clone, Debug)]
pub struct FiniteOperator {
    pub omega: Weight,
    pub side: Side,
    pub matrix: DMatrix<f64>,
    /// Terms dropped from the primed sum because `U` had a pole.
    pub omitted_terms: usize,
    /// Omitted terms with fewer numerator zeros than poles.
    pub unmatched_omissions: usize,
}

#[derive(Default)]
struct Row {
    entries: Vec<(usize, f64)>,
    omitted: usize,
    unmatched: usize,
}

pub fn finite_operator(cone: &TruncatedCone, omega: &Weight) -> Result<FiniteOperator> {
    let frame = cone.frame();
    let shifts = plan(frame, omega)?;
    let rows: Vec<Row> = cone
        .weights()
        .par_iter()
        .map(|mu| assemble_row(cone, &shifts, mu))
        .collect::<Result<_>>()?;
    let n = cone.len();
    let mut matrix = DMatrix::zeros(n, n);
    let mut omitted_terms = 0;
    let mut unmatched_omissions = 0;
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row.entries {
            matrix[(i, j)] += v;
        }
        omitted_terms += row.omitted;
        unmatched_omissions += row.unmatched;
    }
    Ok(FiniteOperator {
        omega: omega.clone(),
        side: frame.side(),
        matrix,
        omitted_terms,
        unmatched_omissions,
    })
}

fn assemble_row(cone: &TruncatedCone, shifts: &[ShiftPlan], mu: &Weight) -> Result<Row> {
    let frame = cone.frame();
    let mu_p = frame.pairings(mu);
    let mut row = Row::default();
    for s in shifts {
        let target = mu + &s.nu;
        let ratio = eval_v(frame, &s.v, &mu_p);
        let Some(j) = cone.position(&target) else {
            if ratio.numerator_zeros == 0 {
                return Err(Error::Invariant(format!(
                    "boundary term does not vanish: numerator of V_{} at {mu} is {:e} although the shift leaves the cone",
                    s.nu, ratio.numerator
                )));
            }
            continue;
        };
        let v = ratio.value().ok_or_else(|| {
            Error::Invariant(format!(
                "denominator of V_{} vanishes at the in-cone point {mu}",
                s.nu
            ))
        })?;
        let mut u_sum = 0.0;
        for eta in &s.etas {
            let u = classify_u(eval_u(frame, eta, &mu_p));
            if let super::UCoefficient::Omitted {
                numerator_zeros,
                denominator_zeros,
            } = u
            {
                row.omitted += 1;
                if numerator_zeros < denominator_zeros {
                    row.unmatched += 1;
                }
            }
            u_sum += u.contribution();
        }
        row.entries.push((j, v * u_sum));
    }
    Ok(row)
}

impl FiniteOperator {
    /// Plain-text dump: a header, then `row col re im` for each non-zero
    /// entry with weights listed in fundamental coordinates.
    pub fn to_text(&self, cone: &TruncatedCone) -> String {
        let spec = cone.spec();
        let pair = spec.pair();
        let r = cone.frame().roots();
        let coords = |w: &Weight| {
            r.fundamental_coords(w)
                .iter()
                .map(format_rational)
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut s = String::new();
        writeln!(s, "# type {}", pair.roots().label()).unwrap();
        writeln!(s, "# pair {}", pair.kind()).unwrap();
        writeln!(
            s,
            "# g {} {}",
            format_rational(&spec.g().g_short),
            format_rational(&spec.g().g_long)
        )
        .unwrap();
        writeln!(s, "# c {}", spec.c()).unwrap();
        writeln!(s, "# side {}", self.side).unwrap();
        writeln!(s, "# omega {}", coords(&self.omega)).unwrap();
        writeln!(s, "# dim {}", cone.len()).unwrap();
        for (i, w) in cone.weights().iter().enumerate() {
            writeln!(s, "# grid {i} {}", coords(w)).unwrap();
        }
        for i in 0..self.matrix.nrows() {
            for j in 0..self.matrix.ncols() {
                let v = self.matrix[(i, j)];
                if v != 0.0 {
                    writeln!(s, "{i} {j} {v:.17e} {:.17e}", 0.0).unwrap();
                }
            }
        }
        s
    }
}

/// `max |⟨D_ω e_j, e_i⟩ − ⟨e_j, D_{ω*} e_i⟩|` over basis functions,
/// divided by the largest weighted entry of `D_ω`.
pub fn adjointness_residual(cone: &TruncatedCone, omega: &Weight) -> Result<f64> {
    let star = cone.frame().roots().star(omega);
    let a = finite_operator(cone, omega)?.matrix;
    let b = if &star == omega {
        a.clone()
    } else {
        finite_operator(cone, &star)?.matrix
    };
    let w = cone_weights(cone)?;
    let n = cone.len();
    let mut scale: f64 = 0.0;
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let lhs = a[(i, j)] * w[i];
            let rhs = b[(j, i)] * w[j];
            scale = scale.max(lhs.abs());
            worst = worst.max((lhs - rhs).abs());
        }
    }
    Ok(if scale > 0.0 { worst / scale } else { worst })
}

/// Outcome of the recurrence `Δ̂(μ+ν)V_{−ν}(μ+ν) = Δ̂(μ)V_ν(μ)`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceCheck {
    pub residual: f64,
    pub pairs: usize,
    /// Pairs from minuscule or quasi-minuscule orbits where either side
    /// failed to be strictly positive.
    pub non_positive: usize,
}

pub fn delta_recurrence_residual(cone: &TruncatedCone, omega: &Weight) -> Result<RecurrenceCheck> {
    let frame = cone.frame();
    frame.require_small(omega)?;
    let r = frame.roots();
    let positive_orbit = matches!(
        r.classify_weight(omega),
        WeightClass::Minuscule | WeightClass::QuasiMinuscule
    );
    let w = cone_weights(cone)?;
    let shifts = r.saturated_set(omega);
    let per_mu: Vec<Result<RecurrenceCheck>> = cone
        .weights()
        .par_iter()
        .enumerate()
        .map(|(i, mu)| {
            let mut out = RecurrenceCheck::default();
            for nu in &shifts {
                let target = mu + nu;
                let Some(j) = cone.position(&target) else {
                    continue;
                };
                let lhs = w[j] * super::coefficient_v(frame, &-nu, &target)?;
                let rhs = w[i] * super::coefficient_v(frame, nu, mu)?;
                let scale = lhs.abs().max(rhs.abs());
                if scale > 0.0 {
                    out.residual = out.residual.max((lhs - rhs).abs() / scale);
                }
                out.pairs += 1;
                if positive_orbit && !nu.is_zero() && !(lhs > 0.0 && rhs > 0.0) {
                    out.non_positive += 1;
                }
            }
            Ok(out)
        })
        .collect();
    let mut total = RecurrenceCheck::default();
    for c in per_mu {
        let c = c?;
        total.residual = total.residual.max(c.residual);
        total.pairs += c.pairs;
        total.non_positive += c.non_positive;
    }
    Ok(total)
}
