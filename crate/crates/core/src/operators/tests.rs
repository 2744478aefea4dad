use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use super::*;
use crate::macparams::{AdmissiblePair, Multiplicity, PairKind};
use crate::rational::{frac, q, to_f64};
use crate::rootsys::CartanType;

fn spec(label: &str, kind: PairKind, gs: Q, gl: Q, c: i64) -> UnitarySpec {
    let pair = AdmissiblePair::build(CartanType::parse(label, None).unwrap(), kind).unwrap();
    let g = if pair.roots().is_simply_laced() {
        Multiplicity::equal(gs).unwrap()
    } else {
        Multiplicity::new(gs, gl).unwrap()
    };
    UnitarySpec::new(pair, g, c, false).unwrap()
}

fn a1(g: Q, c: i64) -> UnitarySpec {
    spec("A1", PairKind::SelfDual, g, g, c)
}

/// Largest relative defect of `tr Aᵏ = Σ_λ E(λ)ᵏ` for `k = 1..=4`. The
/// power sums pin down the spectrum without an eigensolver.
fn power_sum_defect(m: &nalgebra::DMatrix<f64>, want: &[Complex64]) -> f64 {
    let mut p = m.clone();
    let mut worst: f64 = 0.0;
    for k in 1..=4 {
        let lhs = p.trace();
        let rhs: Complex64 = want.iter().map(|e| e.powi(k)).sum();
        let scale = want.iter().map(|e| e.norm().powi(k)).sum::<f64>().max(1.0);
        worst = worst.max((rhs - lhs).norm() / scale);
        p = &p * m;
    }
    worst
}

#[test]
fn a1_v_at_origin_is_two_cosine() {
    let g = frac(2, 5);
    let s = a1(g, 3);
    let frame = Frame::new(&s, Side::PHat);
    let omega = frame.small_weights()[0].clone();
    let zero = Weight::zero(omega.dim());
    // sin κ(2g)/sin κg at x = ρ_g
    let kappa = s.kappa();
    let v = coefficient_v(&frame, &omega, &zero).unwrap();
    assert!((v - 2.0 * (kappa * to_f64(&g)).cos()).abs() < 1e-14);
}

#[test]
fn a1_boundary_coefficients_vanish() {
    let s = a1(frac(7, 10), 4);
    let frame = Frame::new(&s, Side::PHat);
    let r = frame.roots();
    let omega = frame.small_weights()[0].clone();
    let top = r.from_fundamental_ints(&[4]);
    let zero = Weight::zero(omega.dim());
    let up = coefficient_v_ratio(&frame, &omega, &top);
    let down = coefficient_v_ratio(&frame, &-&omega, &zero);
    assert!(up.numerator_zeros > 0 && up.numerator.abs() < 1e-15);
    assert!(down.numerator_zeros > 0 && down.numerator.abs() < 1e-15);
}

#[test]
fn a1_operator_is_tridiagonal_with_cosine_spectrum() {
    let g = frac(1, 3);
    let c = 4;
    let s = a1(g, c);
    let cone = TruncatedCone::new(&s, Side::PHat);
    let omega = cone.frame().small_weights()[0].clone();
    let op = finite_operator(&cone, &omega).unwrap();
    let kappa = s.kappa();
    let gf = to_f64(&g);
    // Closed form: (Df)(k) = V₊(k) f(k+1) + V₋(k) f(k−1) with
    // V± = sin κ(g+k ± g) / sin κ(g+k).
    for i in 0..=c as usize {
        for j in 0..=c as usize {
            let x = gf + i as f64;
            let want = if j == i + 1 {
                (kappa * (x + gf)).sin() / (kappa * x).sin()
            } else if j + 1 == i {
                (kappa * (x - gf)).sin() / (kappa * x).sin()
            } else {
                0.0
            };
            assert!((op.matrix[(i, j)] - want).abs() < 1e-13, "({i},{j})");
        }
    }
    let want: Vec<Complex64> = (0..=c)
        .map(|l| Complex64::new(2.0 * (kappa * (gf + l as f64)).cos(), 0.0))
        .collect();
    assert!(power_sum_defect(&op.matrix, &want) < 1e-12);
}

#[test]
fn a1_epsilon_of_root_is_two() {
    let s = a1(frac(3, 7), 3);
    let frame = Frame::new(&s, Side::PHat);
    let alpha = frame.roots().simple_roots()[0].clone();
    let e = epsilon(&frame, &alpha, &Weight::zero(alpha.dim()));
    assert!((e - Complex64::new(2.0, 0.0)).norm() < 1e-15);
}

#[test]
fn minuscule_symbol_is_the_orbit_sum() {
    let s = spec("A2", PairKind::SelfDual, frac(7, 10), frac(7, 10), 3);
    let frame = Frame::new(&s, Side::PHat);
    let r = frame.roots();
    let omega = r.fundamental_weights()[0].clone();
    let sym = eigen_symbol(&frame, &omega).unwrap();
    assert_eq!(sym.coefficients().count(), 1);
    let lam = r.from_fundamental_ints(&[1, 1]);
    let x = frame.dual_rho_g() + &lam;
    let direct: Complex64 = r
        .weyl_orbit(&omega)
        .iter()
        .map(|nu| s.exp_weight(nu, &x))
        .sum();
    assert!((sym.eval(&frame, &lam) - direct).norm() < 1e-14);
}

/// Eigenvalues of every small-weight operator equal the symbol at the
/// opposite side's cone points, as multisets.
fn spectrum_matches(s: &UnitarySpec) {
    let grid = TruncatedCone::new(s, Side::PHat);
    let cone = TruncatedCone::new(s, Side::P);
    let frame = grid.frame();
    for omega in frame.small_weights() {
        let op = finite_operator(&grid, &omega).unwrap();
        let want: Vec<Complex64> = cone
            .weights()
            .iter()
            .map(|l| eigenvalue_e(frame, &omega, l).unwrap())
            .collect();
        let d = power_sum_defect(&op.matrix, &want);
        assert!(d < 1e-12, "{} ω={omega}: {d:e}", s.pair().label());
    }
}

#[test]
fn operator_spectra_match_symbols() {
    spectrum_matches(&spec("A2", PairKind::SelfDual, frac(7, 10), frac(7, 10), 3));
    spectrum_matches(&spec(
        "B2",
        PairKind::SelfDual,
        frac(7, 10),
        frac(11, 20),
        3,
    ));
    spectrum_matches(&spec("B2", PairKind::Dual, frac(7, 10), frac(11, 20), 3));
    spectrum_matches(&spec(
        "G2",
        PairKind::SelfDual,
        frac(7, 10),
        frac(11, 20),
        2,
    ));
    spectrum_matches(&spec("G2", PairKind::Dual, frac(7, 10), frac(11, 20), 3));
}

#[test]
fn g2_epsilon_matches_operator_trace() {
    // tr D_ω = Σ_λ E_ω(ρ_g+λ): an oracle for the lower coefficients that
    // does not go through the symbol's product formula.
    let s = spec("G2", PairKind::Dual, frac(7, 10), frac(11, 20), 3);
    let grid = TruncatedCone::new(&s, Side::PHat);
    let cone = TruncatedCone::new(&s, Side::P);
    for omega in grid.frame().small_weights() {
        let op = finite_operator(&grid, &omega).unwrap();
        let sum: Complex64 = cone
            .weights()
            .iter()
            .map(|l| eigenvalue_e(grid.frame(), &omega, l).unwrap())
            .sum();
        assert!((sum - Complex64::new(op.matrix.trace(), 0.0)).norm() < 1e-10);
    }
}

#[test]
fn operators_commute() {
    let s = spec("A2", PairKind::SelfDual, frac(1, 3), frac(1, 3), 3);
    let grid = TruncatedCone::new(&s, Side::PHat);
    let ws = grid.frame().small_weights();
    let ops: Vec<_> = ws
        .iter()
        .map(|w| finite_operator(&grid, w).unwrap().matrix)
        .collect();
    for a in &ops {
        for b in &ops {
            let d = (a * b - b * a).abs().max();
            assert!(d < 1e-11, "commutator {d:e}");
        }
    }
}

#[test]
fn a2_adjointness() {
    let s = spec("A2", PairKind::SelfDual, frac(7, 10), frac(7, 10), 3);
    let grid = TruncatedCone::new(&s, Side::PHat);
    for w in grid.frame().small_weights() {
        assert!(adjointness_residual(&grid, &w).unwrap() < 1e-12);
    }
}

#[test]
fn g2_recurrence() {
    let s = spec("G2", PairKind::SelfDual, frac(7, 10), frac(11, 20), 3);
    let grid = TruncatedCone::new(&s, Side::PHat);
    for w in grid.frame().small_weights() {
        let rec = delta_recurrence_residual(&grid, &w).unwrap();
        assert!(rec.residual < 1e-12);
        assert!(rec.pairs > 0);
        assert_eq!(rec.non_positive, 0);
    }
}

#[test]
fn u_on_the_diagonal_is_one() {
    let s = spec("B3", PairKind::SelfDual, frac(7, 10), frac(11, 20), 2);
    let grid = TruncatedCone::new(&s, Side::PHat);
    let frame = grid.frame();
    let r = frame.roots();
    for omega in frame.small_weights() {
        for nu in r.saturated_set(&omega) {
            for mu in grid.weights() {
                assert_eq!(coefficient_u(frame, &nu, &nu, mu), UCoefficient::Value(1.0));
            }
        }
    }
}

#[test]
fn non_regular_g_omits_u_terms_exactly_where_predicted() {
    // g = 1/3 on B2 dual puts ⟨ρ̂_g, α∨⟩ on the pole set for some α.
    let s = spec("B2", PairKind::Dual, frac(1, 3), frac(1, 3), 3);
    let rep = lemma_checks(&s).unwrap();
    assert!(rep.exact_ok(), "{rep:?}");
    assert!(rep.u_quadruples > 0);
}

#[test]
fn matrix_text_lists_grid_and_entries() {
    let s = a1(frac(1, 2), 2);
    let grid = TruncatedCone::new(&s, Side::PHat);
    let omega = grid.frame().small_weights()[0].clone();
    let text = finite_operator(&grid, &omega).unwrap().to_text(&grid);
    assert!(text.contains("# dim 3"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 4);
}

#[test]
fn side_dual_involution() {
    assert_eq!(Side::P.dual(), Side::PHat);
    assert_eq!(Side::PHat.dual().dual(), Side::PHat);
}

fn small_types() -> impl Strategy<Value = (&'static str, PairKind)> {
    prop_oneof![
        Just(("A2", PairKind::SelfDual)),
        Just(("B2", PairKind::SelfDual)),
        Just(("B2", PairKind::Dual)),
        Just(("G2", PairKind::SelfDual)),
        Just(("G2", PairKind::Dual)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lemmas_hold_for_random_rational_g(
        (label, kind) in small_types(),
        (a, b) in (1i64..=12, 1i64..=12),
        d in 2i64..=7,
        c in 2i64..=3,
    ) {
        let s = spec(label, kind, Q::new(a, d), Q::new(b, d), c);
        let rep = lemma_checks(&s).unwrap();
        prop_assert!(rep.exact_ok(), "{rep:?}");
        prop_assert!(rep.recurrence_residual < 1e-10);
        prop_assert!(rep.adjointness_residual < 1e-9);
    }

    #[test]
    fn a1_eigenvalues_are_cosines(a in 1i64..=9, d in 2i64..=9, c in 2i64..=5) {
        let g = Q::new(a, d);
        let s = a1(g, c);
        let grid = TruncatedCone::new(&s, Side::PHat);
        let omega = grid.frame().small_weights()[0].clone();
        let m = finite_operator(&grid, &omega).unwrap().matrix;
        let kappa = PI / to_f64(&(s.h_g() + q(c)));
        let want: Vec<Complex64> = (0..=c)
            .map(|l| Complex64::new(2.0 * (kappa * (to_f64(&g) + l as f64)).cos(), 0.0))
            .collect();
        prop_assert!(power_sum_defect(&m, &want) < 1e-11);
    }
}
