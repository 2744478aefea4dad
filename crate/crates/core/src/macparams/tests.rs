use super::*;
use crate::rational::frac;
use crate::rootsys::bounded_dominant_coords;

fn pair(label: &str, rank: usize, kind: PairKind) -> AdmissiblePair {
    AdmissiblePair::build(CartanType::parse(label, Some(rank)).unwrap(), kind).unwrap()
}

fn mult(gs: Q, gl: Q, p: &AdmissiblePair) -> Multiplicity {
    if p.roots().is_simply_laced() {
        Multiplicity::equal(gs).unwrap()
    } else {
        Multiplicity::new(gs, gl).unwrap()
    }
}

/// Direct product for `Δ(λ)`, written out independently of the library's
/// weight routines.
fn delta_oracle(spec: &UnitarySpec, lambda: &Weight) -> f64 {
    let rho_g = spec.rho_g();
    let mut acc = 1.0;
    for d in spec.r_root_data() {
        let r = rho_g.dot(&d.coroot);
        let l = lambda.dot(&d.coroot).to_integer();
        let kappa = std::f64::consts::PI / rational::to_f64(&d.scale.period);
        let x = rational::to_f64(&r);
        let gf = rational::to_f64(&d.g);
        acc *= (kappa * (x + l as f64)).sin() / (kappa * x).sin();
        acc *= trig_pochhammer(x + gf, kappa, l as u32)
            / trig_pochhammer(x + 1.0 - gf, kappa, l as u32);
    }
    acc
}

fn cone(spec: &UnitarySpec) -> Vec<Weight> {
    let r = spec.pair().roots();
    let psv = spec.pair().psi_hat_vee();
    let marks: Vec<i64> = r
        .fundamental_weights()
        .iter()
        .map(|w| w.dot(&psv).to_integer())
        .collect();
    bounded_dominant_coords(&marks, spec.c())
        .into_iter()
        .map(|c| r.from_fundamental_ints(&c))
        .collect()
}

#[test]
fn a1_kappa_and_mass() {
    let p = pair("A", 1, PairKind::SelfDual);
    let spec = unitary_spec(&p, &Multiplicity::equal(q(1)).unwrap(), 2).unwrap();
    assert_eq!(spec.h_g(), q(2));
    assert!((spec.kappa() - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
    let m = total_mass_formula(&spec).unwrap();
    assert!((m.n_0 - 4.0).abs() < 1e-12);
    let brute: f64 = cone(&spec).iter().map(|l| delta_oracle(&spec, l)).sum();
    assert!((brute - 4.0).abs() < 1e-12);
}

#[test]
fn h_g_matches_tables_as_linear_form() {
    let tables = mass_tables().unwrap();
    let samples = [
        (frac(7, 10), frac(11, 20)),
        (q(1), q(1)),
        (frac(1, 3), frac(2, 5)),
        (frac(3, 7), frac(5, 2)),
    ];
    let cases = [
        ("A", 1),
        ("A", 3),
        ("B", 2),
        ("B", 4),
        ("C", 3),
        ("D", 4),
        ("D", 5),
        ("E", 6),
        ("E", 7),
        ("E", 8),
        ("F", 4),
        ("G", 2),
    ];
    for (l, n) in cases {
        for kind in [PairKind::SelfDual, PairKind::Dual] {
            let p = pair(l, n, kind);
            for (gs, gl) in samples {
                let g = mult(gs, gl, &p);
                let ty = p.roots().cartan_type();
                let expect = tables.h_g(ty, kind, g.g_short, g.g_long).unwrap();
                assert_eq!(
                    h_g_value(&p, &g),
                    expect,
                    "{} {kind} g=({gs},{gl})",
                    p.label()
                );
            }
        }
    }
}

#[test]
fn h_g_examples() {
    let g = Multiplicity::new(frac(1, 3), frac(2, 5)).unwrap();
    let g2 = pair("G", 2, PairKind::SelfDual);
    assert_eq!(h_g_value(&g2, &g), q(3) * g.g_long + g.g_short);
    let b = pair("B", 3, PairKind::Dual);
    assert_eq!(h_g_value(&b, &g), q(4) * g.g_long + q(2) * g.g_short);
    let a = pair("A", 4, PairKind::SelfDual);
    assert_eq!(
        h_g_value(&a, &Multiplicity::equal(frac(2, 3)).unwrap()),
        frac(10, 3)
    );
}

#[test]
fn rho_weights_split() {
    let p = pair("G", 2, PairKind::SelfDual);
    let g = Multiplicity::new(frac(7, 10), frac(11, 20)).unwrap();
    let rw = rho_weights(&p, &g);
    assert_eq!(&rw.rho_theta + &rw.rho_long, rw.rho);
    assert_eq!(rw.rho, p.roots().rho().clone());
    for a in p.roots().simple_coroots() {
        let lhs = rw.rho_g.dot(a);
        let rhs = g.g_short * rw.rho_theta.dot(a) + g.g_long * rw.rho_long.dot(a);
        assert_eq!(lhs, rhs);
    }
    let a2 = pair("A", 2, PairKind::SelfDual);
    let rw = rho_weights(&a2, &Multiplicity::equal(frac(1, 3)).unwrap());
    assert!(rw.rho_long.is_zero());
    assert_eq!(rw.rho_g, a2.roots().rho() * frac(1, 3));
}

#[test]
fn pair_normalizations() {
    for (l, n, m) in [
        ("B", 3, 2),
        ("C", 3, 2),
        ("F", 4, 2),
        ("G", 2, 3),
        ("A", 2, 1),
        ("E", 6, 1),
    ] {
        let p = pair(l, n, PairKind::SelfDual);
        assert_eq!(p.m(), m, "{l}{n}");
        let d = pair(l, n, PairKind::Dual);
        assert_eq!(d.m(), 1);
        assert_eq!(d.u_phi(), Q::one());
    }
    let p = pair("E", 7, PairKind::SelfDual);
    assert_eq!(p.u_phi(), Q::one());
    assert_eq!(p.u_theta(), Q::one());
}

#[test]
fn trig_pochhammer_values() {
    assert_eq!(trig_pochhammer(0.3, 1.1, 0), 1.0);
    let v = trig_pochhammer(1.0, std::f64::consts::FRAC_PI_4, 2);
    assert!((v - 2.0 * std::f64::consts::SQRT_2).abs() < 1e-14);
    let s = SineScale { period: q(4) };
    let v: f64 = pochhammer(&q(1), s, 2);
    assert!((v - 2.0 * std::f64::consts::SQRT_2).abs() < 1e-14);
    // κ(a+j) = π at j = 1.
    let v: f64 = pochhammer(&q(3), s, 3);
    assert_eq!(v, 0.0);
}

#[test]
fn regularity_examples() {
    let a1 = pair("A", 1, PairKind::SelfDual);
    let s = unitary_spec(&a1, &Multiplicity::equal(frac(1, 2)).unwrap(), 3).unwrap();
    assert!(is_regular_g(&s).regular);
    let s = unitary_spec(&a1, &Multiplicity::equal(q(1)).unwrap(), 3).unwrap();
    let r = is_regular_g(&s);
    assert!(!r.regular);
    assert_eq!(r.violations.len(), 1);
    let a3 = pair("A", 3, PairKind::SelfDual);
    // h_g = 4/3: simple roots pair to 1/3 = h_g - 1, the highest root to 1.
    let s = unitary_spec(&a3, &Multiplicity::equal(frac(1, 3)).unwrap(), 2).unwrap();
    let r = is_regular_g(&s);
    assert!(!r.regular);
    assert_eq!(r.violations.len(), 4);
    let s = unitary_spec(&a3, &Multiplicity::equal(frac(2, 5)).unwrap(), 2).unwrap();
    assert!(is_regular_g(&s).regular);
}

#[test]
fn default_generic_g_is_regular_for_shipped_types() {
    for (l, n) in [
        ("A", 3),
        ("B", 3),
        ("C", 4),
        ("D", 4),
        ("F", 4),
        ("G", 2),
        ("E", 6),
    ] {
        for kind in [PairKind::SelfDual, PairKind::Dual] {
            let p = pair(l, n, kind);
            let d = Multiplicity::default_generic();
            let g = mult(d.g_short, d.g_long, &p);
            let s = unitary_spec(&p, &g, 3).unwrap();
            assert!(is_regular_g(&s).regular, "{}", p.label());
        }
    }
}

#[test]
fn configuration_errors() {
    let a1 = pair("A", 1, PairKind::SelfDual);
    assert!(unitary_spec(&a1, &Multiplicity::equal(q(1)).unwrap(), 1).is_err());
    assert!(Multiplicity::new(q(0), q(1)).is_err());
    let a2 = pair("A", 2, PairKind::SelfDual);
    assert!(Multiplicity::new(q(1), q(2))
        .unwrap()
        .for_pair(&a2)
        .is_err());
    let e7 = pair("E", 7, PairKind::SelfDual);
    let err = unitary_spec(&e7, &Multiplicity::equal(q(1)).unwrap(), 12).unwrap_err();
    assert!(err.to_string().contains("not a proper multiple of 6"));
    assert!(UnitarySpec::new(e7.clone(), Multiplicity::equal(q(1)).unwrap(), 12, true).is_ok());
    assert!(unitary_spec(&e7, &Multiplicity::equal(q(1)).unwrap(), 6).is_ok());
}

#[test]
fn unit_modulus_and_truncation() {
    for (l, n) in [("B", 3), ("C", 3), ("G", 2), ("F", 4), ("A", 3), ("D", 4)] {
        for kind in [PairKind::SelfDual, PairKind::Dual] {
            let p = pair(l, n, kind);
            let g = mult(frac(1, 3), frac(2, 5), &p);
            for c in 2..6 {
                let s = unitary_spec(&p, &g, c).unwrap();
                assert!(s.truncation_defect() < 1e-12);
                for cl in [RootClass::Short, RootClass::Long] {
                    assert!((s.q_param(cl).norm() - 1.0).abs() < 1e-15);
                    assert!((s.t_param(cl).norm() - 1.0).abs() < 1e-15);
                }
            }
        }
    }
}

#[test]
fn swapped_pair_keeps_kappa() {
    for (l, n) in [("B", 3), ("C", 3), ("G", 2), ("F", 4), ("A", 2)] {
        for kind in [PairKind::SelfDual, PairKind::Dual] {
            let p = pair(l, n, kind);
            let g = mult(frac(7, 10), frac(11, 20), &p);
            let s = unitary_spec(&p, &g, 3).unwrap();
            let sw = s.swapped();
            assert_eq!(sw.level(), s.level(), "{}", p.label());
            assert!((sw.kappa() - s.kappa()).abs() < 1e-15);
            assert_eq!(sw.rho_hat_g(), s.rho_g());
            assert_eq!(sw.rho_g(), s.rho_hat_g());
        }
    }
}

#[test]
fn q_theta_root_of_unity_order() {
    let p = pair("G", 2, PairKind::SelfDual);
    let g = Multiplicity::new(frac(1, 3), frac(2, 5)).unwrap();
    let s = unitary_spec(&p, &g, 2).unwrap();
    let per = q(p.m()) * s.level();
    let order = *per.numer();
    let z = s.q_param(RootClass::Short);
    assert!((z.powi(order as i32) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    for k in 1..order {
        if order % k == 0 {
            assert!((z.powi(k as i32) - Complex64::new(1.0, 0.0)).norm() > 1e-6);
        }
    }
}

#[test]
fn moment_bounds_on_cone() {
    for (l, n) in [("B", 3), ("C", 3), ("G", 2), ("A", 3)] {
        for kind in [PairKind::SelfDual, PairKind::Dual] {
            let p = pair(l, n, kind);
            let g = mult(frac(7, 10), frac(11, 20), &p);
            let s = unitary_spec(&p, &g, 3).unwrap();
            for lam in cone(&s) {
                let x = s.rho_g() + &lam;
                for d in s.r_root_data() {
                    let v = x.dot(&d.coroot);
                    assert!(
                        d.g <= v && v <= q(d.m) * s.level() - d.g,
                        "{} {lam}",
                        p.label()
                    );
                }
            }
        }
    }
}

#[test]
fn table_mass_matches_brute_force_sum() {
    let samples = [
        (frac(7, 10), frac(11, 20)),
        (q(1), q(1)),
        (frac(1, 3), frac(2, 5)),
    ];
    let cases = [
        ("A", 2),
        ("B", 2),
        ("B", 3),
        ("C", 3),
        ("C", 4),
        ("D", 4),
        ("G", 2),
        ("F", 4),
    ];
    for (l, n) in cases {
        for kind in [PairKind::SelfDual, PairKind::Dual] {
            let p = pair(l, n, kind);
            for (gs, gl) in samples {
                let g = mult(gs, gl, &p);
                for c in 2..=3 {
                    let s = unitary_spec(&p, &g, c).unwrap();
                    let brute: f64 = cone(&s).iter().map(|x| delta_oracle(&s, x)).sum();
                    let m = total_mass_formula(&s).unwrap();
                    let rel = (m.n_0 - brute).abs() / brute;
                    assert!(
                        rel < 1e-10,
                        "{} g=({gs},{gl}) c={c}: table {} brute {}",
                        p.label(),
                        m.n_0,
                        brute
                    );
                }
            }
        }
    }
}

#[test]
fn extended_precision_agrees() {
    let p = pair("F", 4, PairKind::SelfDual);
    let g = Multiplicity::default_generic();
    let s = unitary_spec(&p, &g, 3).unwrap();
    let d = total_mass_formula(&s).unwrap();
    let e = total_mass_formula(&s.clone().with_precision(Precision::Extended)).unwrap();
    assert!((d.n_0 - e.n_0).abs() / e.n_0 < 1e-12);
}
