//! Construction of `p_λ` by triangular back-substitution in the monomial
//! basis, and the Gram-Schmidt route kept as an independent cross-check.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use super::weights::cone_weights;
use super::{monomial, SymmetricPolynomial};
use crate::error::{Error, Result};
use crate::macparams::{Multiplicity, UnitarySpec};
use crate::operators::{eigen_symbol, finite_operator, Side, TruncatedCone};
use crate::rational::Q;
use crate::rootsys::{Family, Weight};

/// Joint eigenvalue separation below this is treated as a collision.
pub const GAP_FLOOR: f64 = 1e-8;
/// Evaluation matrices with a larger 2-norm condition number are refused.
pub const CONDITION_LIMIT: f64 = 1e12;

/// Macdonald polynomials for every `λ ∈ P_c` together with the data used
/// to build them.
#[derive(Clone, Debug)]
pub struct Construction {
    /// `P_c`, indexing the polynomials and the monomial basis.
    pub cone: TruncatedCone,
    /// `P̂_c`, the evaluation grid `ρ̂_g + μ`.
    pub grid: TruncatedCone,
    /// `[m_λ(ρ̂_g + μ)]`, rows `μ`, columns `λ`.
    pub evaluation: DMatrix<Complex64>,
    /// Column `λ` holds the coefficients of `p_λ` in the `m_κ` basis.
    pub coefficients: DMatrix<Complex64>,
    /// `[p_λ(ρ̂_g + μ)]`, rows `μ`, columns `λ`.
    pub values: DMatrix<Complex64>,
    pub condition: f64,
    /// Smallest eigenvalue gap available to back-substitution.
    pub min_gap: f64,
    /// True when a collision at this `g` was resolved by continuation
    /// from nearby `g`.
    pub continued: bool,
    /// Largest entry of `M⁻¹ D_ω M` outside the dominance-triangular
    /// pattern, relative to its largest entry.
    pub triangularity_defect: f64,
    /// Largest deviation of the diagonal of `M⁻¹ D_ω M` from `E_ω(ρ_g+λ)`.
    pub spectrum_defect: f64,
    /// Largest relative residual of `D_ω p_λ = E_ω(ρ_g+λ) p_λ` on the grid.
    pub eigen_residual: f64,
    pub operators: Vec<Weight>,
    pub omitted_terms: usize,
}

fn evaluation_matrix(
    spec: &UnitarySpec,
    cone: &TruncatedCone,
    grid: &TruncatedCone,
) -> DMatrix<Complex64> {
    let rho_hat = spec.rho_hat_g();
    let cols: Vec<Vec<Complex64>> = cone
        .weights()
        .par_iter()
        .map(|lambda| {
            grid.weights()
                .iter()
                .map(|mu| monomial(spec, lambda, &(rho_hat + mu)))
                .collect()
        })
        .collect();
    DMatrix::from_fn(grid.len(), cone.len(), |i, j| cols[j][i])
}

fn condition_number(m: &DMatrix<Complex64>) -> f64 {
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if min > 0.0 {
        max / min
    } else {
        f64::INFINITY
    }
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub(crate) struct Setup {
    pub cone: TruncatedCone,
    pub grid: TruncatedCone,
    pub evaluation: DMatrix<Complex64>,
    pub condition: f64,
}

pub(crate) fn setup(spec: &UnitarySpec) -> Result<Setup> {
    let cone = TruncatedCone::new(spec, Side::P);
    let grid = TruncatedCone::new(spec, Side::PHat);
    if cone.len() != grid.len() {
        return Err(Error::Invariant(format!(
            "|P_c| = {} differs from |P̂_c| = {}",
            cone.len(),
            grid.len()
        )));
    }
    let evaluation = evaluation_matrix(spec, &cone, &grid);
    let condition = condition_number(&evaluation);
    if !(condition <= CONDITION_LIMIT) {
        return Err(Error::Conditioning {
            context: format!(
                "evaluation matrix [m_λ(ρ̂_g+μ)] for {} g=({},{}) c={} ({}×{})",
                spec.pair().label(),
                spec.g().g_short,
                spec.g().g_long,
                spec.c(),
                grid.len(),
                cone.len()
            ),
            condition,
        });
    }
    Ok(Setup {
        cone,
        grid,
        evaluation,
        condition,
    })
}

/// Conjugated operators `M⁻¹ D_ω M` for every small `ω` of `P̂`.
struct Spectral {
    setup: Setup,
    omegas: Vec<Weight>,
    /// `(A_ω, B_ω, E_ω(ρ_g+λ))` per small weight.
    ops: Vec<(DMatrix<Complex64>, DMatrix<Complex64>, Vec<Complex64>)>,
    leq: Vec<Vec<bool>>,
    omitted_terms: usize,
    triangularity_defect: f64,
    spectrum_defect: f64,
}

fn spectral(spec: &UnitarySpec) -> Result<Spectral> {
    let setup = setup(spec)?;
    let (cone, grid) = (&setup.cone, &setup.grid);
    let n = cone.len();
    let roots = spec.pair().roots();
    let hat_frame = grid.frame();
    let lu = setup.evaluation.clone().lu();
    let omegas = hat_frame.small_weights();
    let mut ops = Vec::with_capacity(omegas.len());
    let mut omitted_terms = 0;
    let mut triangularity_defect: f64 = 0.0;
    let mut spectrum_defect: f64 = 0.0;
    let leq: Vec<Vec<bool>> = cone
        .weights()
        .iter()
        .map(|a| {
            cone.weights()
                .iter()
                .map(|b| roots.dominance_leq(a, b))
                .collect()
        })
        .collect();
    for omega in &omegas {
        let op = finite_operator(grid, omega)?;
        omitted_terms += op.omitted_terms;
        let a = op.matrix.map(|x| Complex64::new(x, 0.0));
        let b = lu
            .solve(&(&a * &setup.evaluation))
            .ok_or_else(|| Error::Conditioning {
                context: "evaluation matrix is singular".into(),
                condition: setup.condition,
            })?;
        let symbol = eigen_symbol(hat_frame, omega)?;
        let eig: Vec<Complex64> = cone
            .weights()
            .iter()
            .map(|l| symbol.eval(hat_frame, l))
            .collect();
        let scale = max_abs(&b).max(1.0);
        for i in 0..n {
            for j in 0..n {
                if !leq[i][j] {
                    triangularity_defect = triangularity_defect.max(b[(i, j)].norm() / scale);
                }
            }
            spectrum_defect =
                spectrum_defect.max((b[(i, i)] - eig[i]).norm() / eig[i].norm().max(1.0));
        }
        ops.push((a, b, eig));
    }
    Ok(Spectral {
        setup,
        omegas,
        ops,
        leq,
        omitted_terms,
        triangularity_defect,
        spectrum_defect,
    })
}

/// For each dominance-comparable pair, the small weight with the widest
/// eigenvalue gap and that gap.
fn best_gaps(s: &Spectral) -> Vec<Vec<(usize, f64)>> {
    let n = s.leq.len();
    (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    if i >= j || !s.leq[i][j] {
                        return (0, f64::INFINITY);
                    }
                    s.ops
                        .iter()
                        .enumerate()
                        .map(|(k, (_, b, _))| (k, (b[(j, j)] - b[(i, i)]).norm()))
                        .fold(
                            (0, f64::NEG_INFINITY),
                            |acc, x| if x.1 > acc.1 { x } else { acc },
                        )
                })
                .collect()
        })
        .collect()
}

fn back_substitute(s: &Spectral) -> Result<DMatrix<Complex64>> {
    let n = s.leq.len();
    let gaps = best_gaps(s);
    let weights = s.setup.cone.weights();
    let mut coefficients = DMatrix::<Complex64>::zeros(n, n);
    for j in 0..n {
        coefficients[(j, j)] = Complex64::new(1.0, 0.0);
        for i in (0..j).rev() {
            if !s.leq[i][j] {
                continue;
            }
            let (best, gap) = gaps[j][i];
            if gap < GAP_FLOOR {
                return Err(Error::Degeneracy(format!(
                    "eigenvalues of {} and {} agree to {gap:e} for every small weight",
                    weights[j], weights[i]
                )));
            }
            let b = &s.ops[best].1;
            let mut acc = Complex64::new(0.0, 0.0);
            for k in i + 1..=j {
                acc += b[(i, k)] * coefficients[(k, j)];
            }
            coefficients[(i, j)] = acc / (b[(j, j)] - b[(i, i)]);
        }
    }
    Ok(coefficients)
}

/// Step in `g` used when eigenvalues collide at an isolated parameter value.
pub const CONTINUATION_STEP: i64 = 1000;

/// `E₇` with `c ∈ 6ℤ` degenerates as functions of `g`; continuation in `g`
/// cannot help there.
fn continuable(spec: &UnitarySpec) -> bool {
    let ty = spec.pair().roots().cartan_type();
    !(ty.family == Family::E && ty.rank == 7 && spec.c() % 6 == 0)
}

fn shifted(spec: &UnitarySpec, k: i64) -> Result<UnitarySpec> {
    let d = Q::new(k, CONTINUATION_STEP);
    let g = spec.g();
    // Move off the diagonal g_short = g_long where some multiply laced
    // spectra collide identically.
    let m = if spec.pair().roots().is_simply_laced() {
        Multiplicity::new(g.g_short + d, g.g_long + d)?
    } else {
        Multiplicity::new(g.g_short + d, g.g_long)?
    };
    Ok(
        UnitarySpec::new(spec.pair().clone(), m, spec.c(), spec.allow_degenerate())?
            .with_precision(spec.precision()),
    )
}

/// Coefficients at `g` from the values at `g ± h` and `g ± 2h`, combined
/// so that the error is `O(h⁴)`. The polynomials are analytic in `g`, so
/// this resolves eigenvalue collisions that happen only at isolated `g`.
fn continued_coefficients(spec: &UnitarySpec) -> Result<DMatrix<Complex64>> {
    let at =
        |k: i64| -> Result<DMatrix<Complex64>> { back_substitute(&spectral(&shifted(spec, k)?)?) };
    let s1 = (at(1)? + at(-1)?) * Complex64::new(0.5, 0.0);
    let s2 = (at(2)? + at(-2)?) * Complex64::new(0.5, 0.0);
    Ok((s1 * Complex64::new(4.0, 0.0) - s2) * Complex64::new(1.0 / 3.0, 0.0))
}

pub fn construct_macdonald(spec: &UnitarySpec) -> Result<Construction> {
    let s = spectral(spec)?;
    let n = s.leq.len();
    let min_gap = best_gaps(&s)
        .iter()
        .flatten()
        .map(|x| x.1)
        .fold(f64::INFINITY, f64::min);
    let (coefficients, continued) = match back_substitute(&s) {
        Ok(c) => (c, false),
        Err(Error::Degeneracy(msg)) if continuable(spec) => match continued_coefficients(spec) {
            Ok(c) => (c, true),
            Err(e2) => {
                return Err(Error::Degeneracy(format!(
                    "{msg}; continuation failed: {e2}"
                )))
            }
        },
        Err(e) => return Err(e),
    };
    let values = &s.setup.evaluation * &coefficients;

    let mut eigen_residual: f64 = 0.0;
    for (a, _, eig) in &s.ops {
        let av = a * &values;
        let a_norm = max_abs(a).max(1e-300);
        for j in 0..n {
            let col = values.column(j);
            let v_norm = col.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let r = (0..n)
                .map(|i| (av[(i, j)] - eig[j] * col[i]).norm())
                .fold(0.0, f64::max);
            eigen_residual = eigen_residual.max(r / (a_norm.max(eig[j].norm()) * v_norm));
        }
    }

    let Setup {
        cone,
        grid,
        evaluation,
        condition,
    } = s.setup;
    Ok(Construction {
        cone,
        grid,
        evaluation,
        coefficients,
        values,
        condition,
        min_gap,
        continued,
        triangularity_defect: s.triangularity_defect,
        spectrum_defect: s.spectrum_defect,
        eigen_residual,
        operators: s.omegas,
        omitted_terms: s.omitted_terms,
    })
}

impl Construction {
    pub fn len(&self) -> usize {
        self.cone.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cone.is_empty()
    }

    pub fn polynomials(&self) -> Vec<SymmetricPolynomial> {
        coefficient_polynomials(&self.cone, &self.coefficients)
    }
}

fn coefficient_polynomials(
    cone: &TruncatedCone,
    c: &DMatrix<Complex64>,
) -> Vec<SymmetricPolynomial> {
    let roots = cone.frame().roots();
    (0..cone.len())
        .map(|j| {
            let lead = &cone.weights()[j];
            SymmetricPolynomial {
                leading: lead.clone(),
                terms: (0..=j)
                    .filter(|&i| roots.dominance_leq(&cone.weights()[i], lead))
                    .map(|i| (cone.weights()[i].clone(), c[(i, j)]))
                    .collect(),
            }
        })
        .collect()
}

/// Coefficients from `p_λ = m_λ − Σ_{μ<λ} ⟨m_λ,p_μ⟩/⟨p_μ,p_μ⟩ p_μ` with the
/// inner product of `ℓ²(ρ̂_g + P̂_c, Δ̂)`.
pub(crate) fn gram_schmidt_coefficients(
    cone: &TruncatedCone,
    evaluation: &DMatrix<Complex64>,
    w: &[f64],
) -> DMatrix<Complex64> {
    let n = cone.len();
    let roots = cone.frame().roots();
    let inner = |f: &[Complex64], h: &[Complex64]| -> Complex64 {
        f.iter()
            .zip(h)
            .zip(w)
            .map(|((a, b), w)| a * b.conj() * *w)
            .sum()
    };
    let mut coeffs = DMatrix::<Complex64>::zeros(n, n);
    let mut vals: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut norms: Vec<Complex64> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v: Vec<Complex64> = evaluation.column(j).iter().copied().collect();
        coeffs[(j, j)] = Complex64::new(1.0, 0.0);
        // Modified Gram-Schmidt, run twice to restore orthogonality lost to
        // cancellation when the evaluation matrix is poorly conditioned.
        for _ in 0..2 {
            for i in 0..j {
                if !roots.dominance_leq(&cone.weights()[i], &cone.weights()[j]) {
                    continue;
                }
                let t = inner(&v, &vals[i]) / norms[i];
                for (x, y) in v.iter_mut().zip(&vals[i]) {
                    *x -= t * y;
                }
                for k in 0..=i {
                    let c = coeffs[(k, i)];
                    coeffs[(k, j)] -= t * c;
                }
            }
        }
        norms.push(inner(&v, &v));
        vals.push(v);
    }
    coeffs
}

pub fn gram_schmidt_macdonald(spec: &UnitarySpec) -> Result<Vec<SymmetricPolynomial>> {
    let s = setup(spec)?;
    let w = cone_weights(&s.grid)?;
    let c = gram_schmidt_coefficients(&s.cone, &s.evaluation, &w);
    Ok(coefficient_polynomials(&s.cone, &c))
}

/// `max |c_{μλ} − c^{GS}_{μλ}|` between the coefficients of a construction
/// and those produced by Gram-Schmidt on the same grid.
pub fn gram_schmidt_deviation(con: &Construction) -> Result<f64> {
    let w = cone_weights(&con.grid)?;
    let gs = gram_schmidt_coefficients(&con.cone, &con.evaluation, &w);
    Ok((&gs - &con.coefficients)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max))
}
