use super::*;
use crate::rational::frac;

fn rs(f: Family, n: usize) -> RootSystemData {
    build_root_system(f, n).unwrap()
}

#[test]
fn a1_basics() {
    let r = rs(Family::A, 1);
    assert_eq!(r.positive_roots().len(), 1);
    assert_eq!(r.coxeter_number(), 2);
    assert_eq!(r.dual_coxeter_number(), 2);
    assert_eq!(r.exponents(), &[1]);
    assert_eq!(r.index(), 2);
    assert_eq!(r.weyl_order(), 2);
}

#[test]
fn g2_numbers() {
    let r = rs(Family::G, 2);
    assert_eq!(r.positive_roots().len(), 6);
    assert_eq!(r.coxeter_number(), 6);
    assert_eq!(r.dual_coxeter_number(), 4);
    assert_eq!(r.exponents(), &[1, 5]);
    assert_eq!(r.index(), 1);
    assert_eq!(r.long_norm2() / r.short_norm2(), q(3));
}

#[test]
fn invariants_match_classification() {
    let cases: &[(Family, usize, usize, i64, i64, &[i64], i64)] = &[
        (Family::A, 3, 6, 4, 4, &[1, 2, 3], 4),
        (Family::B, 3, 9, 6, 5, &[1, 3, 5], 2),
        (Family::C, 3, 9, 6, 4, &[1, 3, 5], 2),
        (Family::D, 4, 12, 6, 6, &[1, 3, 3, 5], 4),
        (Family::E, 6, 36, 12, 12, &[1, 4, 5, 7, 8, 11], 3),
        (Family::E, 7, 63, 18, 18, &[1, 5, 7, 9, 11, 13, 17], 2),
        (
            Family::E,
            8,
            120,
            30,
            30,
            &[1, 7, 11, 13, 17, 19, 23, 29],
            1,
        ),
        (Family::F, 4, 24, 12, 9, &[1, 5, 7, 11], 1),
    ];
    for &(f, n, npos, h, hv, ex, ind) in cases {
        let r = rs(f, n);
        let ty = r.cartan_type();
        assert_eq!(r.positive_roots().len(), npos, "{ty}");
        assert_eq!(r.coxeter_number(), h, "{ty}");
        assert_eq!(r.dual_coxeter_number(), hv, "{ty}");
        assert_eq!(r.exponents(), ex, "{ty}");
        assert_eq!(r.index(), ind, "{ty}");
        assert_eq!(r.weyl_order(), ty.weyl_order(), "{ty}");
    }
}

#[test]
fn dual_swaps_b_and_c() {
    let b3 = rs(Family::B, 3);
    let d = dual_root_system(&b3);
    assert_eq!(d.label(), "C3");
    assert!(d.is_coroot_system());
    assert_eq!(d.dual_coxeter_number(), 4);
    let dd = dual_root_system(&d);
    assert_eq!(dd.positive_roots(), b3.positive_roots());
}

#[test]
fn e6_minuscule_orbit_has_27_elements() {
    let r = rs(Family::E, 6);
    let w6 = r.fundamental_weights()[5].clone();
    assert_eq!(r.classify_weight(&w6), WeightClass::Minuscule);
    assert_eq!(r.weyl_orbit(&w6).len(), 27);
}

#[test]
fn a2_saturated_set_of_highest_root() {
    let r = rs(Family::A, 2);
    let theta = r.highest_short_root().clone();
    assert_eq!(r.classify_weight(&theta), WeightClass::QuasiMinuscule);
    assert_eq!(r.saturated_set(&theta).len(), 7);
}

#[test]
fn dominant_representative_word_maps_to_dominant() {
    let r = rs(Family::B, 3);
    let lam = r.from_fundamental_ints(&[-1, 2, -3]);
    let (dom, w) = r.dominant_representative(&lam);
    assert!(r.is_dominant(&dom));
    assert_eq!(w.apply(&r, &lam), dom);
    assert_eq!(w.apply_inverse(&r, &dom), lam);
}

#[test]
fn orbit_is_sorted_with_dominant_first() {
    let r = rs(Family::G, 2);
    let lam = r.from_fundamental_ints(&[1, 1]);
    let orb = r.weyl_orbit(&lam);
    assert_eq!(orb.len(), 12);
    assert_eq!(orb[0], lam);
    assert_eq!(orb[11], -&lam);
}

#[test]
fn stabilizer_orbit_fixes_mu() {
    let r = rs(Family::A, 3);
    let mu = r.from_fundamental_ints(&[0, -1, 1]);
    let om = r.fundamental_weights()[1].clone();
    let orb = r.parabolic_stabilizer_orbit(&mu, &om);
    assert!(orb.contains(&om));
    for x in &orb {
        assert_eq!(x.norm2(), om.norm2());
    }
    // stabiliser of a weight with one zero pairing on a regular-ish face
    assert!(orb.len() <= r.weyl_orbit(&om).len());
}

#[test]
fn small_weights_of_a1_and_g2() {
    let a1 = rs(Family::A, 1);
    assert_eq!(a1.small_weights().len(), 2);
    let g2 = rs(Family::G, 2);
    let sw = g2.small_weights();
    assert!(sw.contains(g2.highest_short_root()));
    for w in &sw {
        assert!(g2.max_coroot_pairing(w) <= q(2));
    }
}

#[test]
fn star_of_a2_fundamental() {
    let r = rs(Family::A, 2);
    let w = r.fundamental_weights();
    assert_eq!(r.star(&w[0]), w[1]);
    let d4 = rs(Family::D, 4);
    assert_eq!(
        d4.star(&d4.fundamental_weights()[0]),
        d4.fundamental_weights()[0]
    );
}

#[test]
fn dominance_order() {
    let r = rs(Family::A, 2);
    let theta = r.highest_root().clone();
    let zero = Weight::zero(3);
    assert!(r.dominance_leq(&zero, &theta));
    assert!(!r.dominance_leq(&theta, &zero));
    assert!(!r.dominance_leq(&r.fundamental_weights()[0], &theta));
    assert_eq!(r.height(&theta), q(2));
    assert_eq!(r.rho().norm2(), q(2));
    assert_eq!(r.fundamental_weights()[0].norm2(), frac(2, 3));
}
