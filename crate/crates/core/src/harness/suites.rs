//! The verification suites behind `run_verification`.

use std::time::Instant;

use rayon::prelude::*;

use super::report::{Report, Status, SuiteReport, SCHEMA_VERSION};
use super::{RunConfig, Suite};
use crate::error::Result;
use crate::macparams::{total_mass_formula, Multiplicity, UnitarySpec};
use crate::operators::{lemma_checks, Side, TruncatedCone, BC_NONZERO, BC_ZERO};
use crate::polynomials::{
    cardinality_generating_function, cone_weights, construct_macdonald, duality_defect,
    gram_schmidt_deviation, nondegeneracy_scan, orthogonality_report, pieri_residual, s_matrix,
    total_mass, weyl_orthogonality_check, Construction, OrthogonalityData,
};
use crate::rational::frac;

/// Tolerances, one per documented contract.
pub const TOL_MASS: f64 = 1e-10;
pub const TOL_ORTHOGONALITY: f64 = 1e-8;
pub const TOL_NORM: f64 = 1e-8;
pub const TOL_S_MATRIX: f64 = 1e-8;
pub const TOL_PIERI: f64 = 1e-8;
pub const TOL_WEYL: f64 = 1e-8;
pub const TOL_GRAM_SCHMIDT: f64 = 1e-8;
pub const TOL_RECURRENCE: f64 = 1e-10;
pub const TOL_ADJOINTNESS: f64 = 1e-9;

struct Context<'a> {
    config: &'a RunConfig,
    spec: &'a UnitarySpec,
    construction: Option<&'a std::result::Result<Construction, String>>,
}

impl Context<'_> {
    /// Construction and weights with the configured perturbation applied.
    fn data(&self, out: &mut SuiteReport) -> Option<(&Construction, OrthogonalityData)> {
        let con = match self.construction? {
            Ok(c) => c,
            Err(e) => {
                out.fail(format!("construction failed: {e}"));
                return None;
            }
        };
        let mut data = match OrthogonalityData::new(con) {
            Ok(d) => d,
            Err(e) => {
                out.fail(e.to_string());
                return None;
            }
        };
        if let Some(p) = &self.config.perturbation {
            if let Some(w) = data.delta_hat.get_mut(p.grid_index) {
                *w *= p.factor;
                out.diagnostics.push(format!(
                    "Δ̂ scaled by {} at grid point {}",
                    p.factor, p.grid_index
                ));
            }
        }
        Some((con, data))
    }
}

fn mass(ctx: &Context, out: &mut SuiteReport) -> Result<()> {
    let spec = ctx.spec;
    let n0 = total_mass(&cone_weights(&TruncatedCone::new(spec, Side::P))?);
    let n0_hat = total_mass(&cone_weights(&TruncatedCone::new(spec, Side::PHat))?);
    let f = total_mass_formula(spec)?;
    out.value("n0_brute", n0);
    out.value("n0_hat_brute", n0_hat);
    out.value("n0_formula", f.n_0);
    out.value("n_c_table", f.n_c_table);
    out.count("index", f.index);
    out.gate("mass_relative", (n0 - f.n_0).abs() / f.n_0, TOL_MASS);
    out.gate(
        "mass_hat_relative",
        (n0_hat - f.n_0).abs() / f.n_0,
        TOL_MASS,
    );
    Ok(())
}

fn orthogonality(ctx: &Context, out: &mut SuiteReport) -> Result<()> {
    let Some((con, data)) = ctx.data(out) else {
        return Ok(());
    };
    let rep = orthogonality_report(&data);
    out.gate("off_diagonal", rep.off_diagonal, TOL_ORTHOGONALITY);
    out.gate(
        "dual_off_diagonal",
        rep.dual_off_diagonal,
        TOL_ORTHOGONALITY,
    );
    out.gate("eigen_residual", con.eigen_residual, TOL_ORTHOGONALITY);
    out.gate(
        "specialization",
        data.specialization_defect,
        TOL_ORTHOGONALITY,
    );
    out.gate(
        "gram_schmidt",
        gram_schmidt_deviation(con)?,
        TOL_GRAM_SCHMIDT,
    );
    out.value("condition", con.condition);
    out.value("min_gap", con.min_gap);
    out.count("omitted_terms", con.omitted_terms as i64);
    Ok(())
}

fn norms(ctx: &Context, out: &mut SuiteReport) -> Result<()> {
    let Some((_, data)) = ctx.data(out) else {
        return Ok(());
    };
    let rep = orthogonality_report(&data);
    out.gate("norm", rep.norm_residual, TOL_NORM);
    out.gate("dual_norm", rep.dual_norm_residual, TOL_NORM);
    // The norm checks use the brute-force N_0; the table value must agree.
    let f = total_mass_formula(ctx.spec)?;
    out.gate(
        "n0_formula_relative",
        (data.n0 - f.n_0).abs() / f.n_0,
        TOL_MASS,
    );
    out.value("n0_brute", data.n0);
    out.value("n0_formula", f.n_0);
    Ok(())
}

fn duality(ctx: &Context, out: &mut SuiteReport) -> Result<()> {
    let Some((con, data)) = ctx.data(out) else {
        return Ok(());
    };
    let s = s_matrix(&data);
    out.gate("unitarity", s.unitarity_defect, TOL_S_MATRIX);
    let swapped = match construct_macdonald(&ctx.spec.swapped()) {
        Ok(c) => c,
        Err(e) => {
            out.fail(format!("construction for the swapped pair failed: {e}"));
            return Ok(());
        }
    };
    let data_hat = OrthogonalityData::new(&swapped)?;
    let s_hat = s_matrix(&data_hat);
    out.gate("unitarity_swapped", s_hat.unitarity_defect, TOL_S_MATRIX);
    out.gate(
        "duality",
        duality_defect(con, &s, &swapped, &s_hat)?,
        TOL_S_MATRIX,
    );
    Ok(())
}

fn pieri(ctx: &Context, out: &mut SuiteReport) -> Result<()> {
    let Some((con, data)) = ctx.data(out) else {
        return Ok(());
    };
    let r = con.cone.frame().roots();
    for omega in con.cone.frame().small_weights() {
        let coords = r.fundamental_int_coords(&omega).unwrap_or_default();
        let key = format!(
            "pieri[{}]",
            coords
                .iter()
                .map(i64::to_string)
                .collect::<Vec<_>>()
                .join(",")
        );
        out.gate(&key, pieri_residual(con, &data, &omega)?, TOL_PIERI);
    }
    Ok(())
}

fn weyl(ctx: &Context, out: &mut SuiteReport) -> Result<()> {
    let w = weyl_orthogonality_check(ctx.spec.pair(), ctx.spec.c())?;
    out.gate("diagonal", w.diagonal_defect, TOL_WEYL);
    out.gate("off_diagonal", w.off_diagonal, TOL_WEYL);
    out.gate("trig_identity", w.trig_corrected_defect, TOL_WEYL);
    out.value("trig_identity_literal", w.trig_literal_defect);
    out.value("diagonal_expected", w.diagonal_expected);
    out.count("hbar", w.hbar);
    out.count("index", w.index);
    out.count("index_lattice", w.index_lattice);
    if w.index != w.index_lattice {
        out.fail(format!(
            "Ind(R,R̂) = {} but |P/u_φ Q̂∨| = {}",
            w.index, w.index_lattice
        ));
    }
    Ok(())
}

/// Samples for the nondegeneracy scan: the configured `g` and the three
/// acceptance samples.
fn scan_samples(spec: &UnitarySpec) -> Vec<Multiplicity> {
    let simply_laced = spec.pair().roots().is_simply_laced();
    let mut out = vec![*spec.g()];
    for (gs, gl) in [
        (frac(7, 10), frac(11, 20)),
        (frac(1, 1), frac(1, 1)),
        (frac(1, 3), frac(2, 5)),
    ] {
        let g = Multiplicity {
            g_short: gs,
            g_long: if simply_laced { gs } else { gl },
        };
        if !out.contains(&g) {
            out.push(g);
        }
    }
    out
}

fn nondegeneracy(ctx: &Context, out: &mut SuiteReport) -> Result<()> {
    let spec = ctx.spec;
    let rep = nondegeneracy_scan(
        spec.pair(),
        spec.c(),
        &scan_samples(spec),
        spec.allow_degenerate(),
    )?;
    out.count("cone_size", rep.cone_size as i64);
    out.count("small_weights", rep.small_weights as i64);
    out.count("samples", rep.samples.len() as i64);
    out.count(
        "unseparated_at_config_g",
        rep.samples[0].unseparated.len() as i64,
    );
    out.count("unseparated_total_over_samples", rep.unexplained as i64);
    out.value("min_separation_at_config_g", rep.samples[0].min_separation);
    if let Some(ct) = rep.e7_c_tilde {
        out.count("e7_c_tilde", ct);
    }
    out.gate_zero("unseparated_every_sample", rep.unseparated_everywhere);
    Ok(())
}

fn lemmas(ctx: &Context, out: &mut SuiteReport) -> Result<()> {
    let r = lemma_checks(ctx.spec)?;
    out.count("moment_pairs", r.moment_pairs as i64);
    out.gate_zero("moment_violations", r.moment_violations.len());
    for v in r.moment_violations.iter().take(5) {
        out.diagnostics.push(v.clone());
    }
    out.count("bc_triples", r.bc_triples as i64);
    out.gate_zero("bc_exact_violations", r.bc_exact_violations);
    out.gate_zero("bc_numeric_violations", r.bc_numeric_violations);
    out.gate("bc_max_zero", r.bc_max_zero, BC_ZERO);
    out.value("bc_min_nonzero", r.bc_min_nonzero);
    if r.bc_min_nonzero.is_finite() && r.bc_min_nonzero < BC_NONZERO {
        out.fail(format!(
            "bc_min_nonzero = {:.3e} below {BC_NONZERO:.0e}",
            r.bc_min_nonzero
        ));
    }
    out.gate_zero("regular_v_violations", r.regular_v_violations);
    out.count("u_quadruples", r.u_quadruples as i64);
    out.gate_zero("denom_u_mismatches", r.denom_u_mismatches);
    out.count("num_u_cases", r.num_u_cases as i64);
    out.gate_zero("num_u_violations", r.num_u_violations);
    out.count("g_regular", r.g_regular as i64);
    out.gate_zero("regular_omissions", r.regular_omissions);
    out.count("recurrence_pairs", r.recurrence_pairs as i64);
    out.gate_zero("recurrence_non_positive", r.recurrence_non_positive);
    out.gate("recurrence", r.recurrence_residual, TOL_RECURRENCE);
    out.gate("adjointness", r.adjointness_residual, TOL_ADJOINTNESS);
    Ok(())
}

fn run_one(ctx: &Context, suite: Suite) -> SuiteReport {
    let start = Instant::now();
    let mut out = SuiteReport::new(suite);
    let res = match suite {
        Suite::Mass => mass(ctx, &mut out),
        Suite::Orthogonality => orthogonality(ctx, &mut out),
        Suite::Norms => norms(ctx, &mut out),
        Suite::Duality => duality(ctx, &mut out),
        Suite::Pieri => pieri(ctx, &mut out),
        Suite::Weyl => weyl(ctx, &mut out),
        Suite::Nondegeneracy => nondegeneracy(ctx, &mut out),
        Suite::Lemmas => lemmas(ctx, &mut out),
    };
    if let Err(e) = res {
        out.fail(e.to_string());
    }
    out.wall_clock_ms = start.elapsed().as_secs_f64() * 1e3;
    out
}

/// Runs the selected suites in parallel; the report lists them in the
/// order of the config.
pub fn run_suites(config: &RunConfig, spec: &UnitarySpec) -> Result<Report> {
    let start = Instant::now();
    let pair = spec.pair();
    let cone = TruncatedCone::new(spec, Side::P);
    let grid = TruncatedCone::new(spec, Side::PHat);
    let gf = cardinality_generating_function(pair, spec.c())?;
    let n0_brute = cone_weights(&cone).map(|w| total_mass(&w)).ok();
    let n0_formula = total_mass_formula(spec).map(|f| f.n_0).ok();
    let construction = config
        .suites
        .iter()
        .any(|s| s.needs_construction())
        .then(|| construct_macdonald(spec).map_err(|e| e.to_string()));
    let ctx = Context {
        config,
        spec,
        construction: construction.as_ref(),
    };
    let suites: Vec<SuiteReport> = config
        .suites
        .par_iter()
        .map(|&s| run_one(&ctx, s))
        .collect();
    let ok_con = construction.as_ref().map(|c| c.as_ref().ok());
    let status = Status::from_ok(
        suites.iter().all(|s| s.status.is_pass())
            && cone.len() == grid.len()
            && gf == cone.len() as i64,
    );
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.clone(),
        status,
        cone_size: cone.len(),
        grid_size: grid.len(),
        cone_size_generating_function: gf,
        n0_brute,
        n0_formula,
        min_gap: ok_con.flatten().map(|c| c.min_gap),
        condition: ok_con.flatten().map(|c| c.condition),
        continued: ok_con.flatten().map(|c| c.continued),
        construction_error: construction.and_then(|c| c.err()),
        suites,
        wall_clock_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}
