use macdonald_core::harness::{run_verification, sweep, RunConfig, Status, Suite};
use macdonald_core::macparams::PairKind;

#[test]
fn multiply_laced_pairs_pass_every_suite() {
    for (label, pair) in [
        ("B3", PairKind::Dual),
        ("C3", PairKind::SelfDual),
        ("G2", PairKind::Dual),
    ] {
        let cfg = RunConfig::new(label, pair, "1/3", Some("2/5"), 3).unwrap();
        let r = run_verification(&cfg).unwrap();
        assert!(
            r.passed(),
            "{}: {:?}",
            cfg.label(),
            r.suites
                .iter()
                .flat_map(|s| &s.diagnostics)
                .collect::<Vec<_>>()
        );
        assert_eq!(r.cone_size, r.cone_size_generating_function as usize);
    }
}

#[test]
fn degenerate_g2_point_is_constructed_by_continuation() {
    let cfg = RunConfig::new("G2", PairKind::Dual, "1", None, 4).unwrap();
    let r = run_verification(&cfg).unwrap();
    assert!(r.passed());
    assert_eq!(r.continued, Some(true));
    let nd = r.suite(Suite::Nondegeneracy).unwrap();
    assert_eq!(nd.counts["unseparated_every_sample"], 0);
}

#[test]
fn sweep_keeps_going_past_bad_configs() {
    let good = RunConfig::new("A1", PairKind::SelfDual, "1/2", None, 2).unwrap();
    let mut bad = good.clone();
    bad.c = 1;
    let s = sweep(&[bad, good]);
    assert_eq!(s.total, 2);
    assert_eq!(s.entries[0].status, Status::Fail);
    assert!(s.entries[0].error.as_deref().unwrap().contains("c"));
    assert!(s.entries[1].status.is_pass());
    assert_eq!(s.status, Status::Fail);
}

#[test]
fn extended_precision_agrees_with_double() {
    let mut cfg = RunConfig::new("F4", PairKind::Dual, "7/10", Some("11/20"), 2)
        .unwrap()
        .with_suites(&[Suite::Mass]);
    let d = run_verification(&cfg).unwrap();
    cfg.precision = macdonald_core::numeric::Precision::Extended;
    let e = run_verification(&cfg).unwrap();
    assert!(d.passed() && e.passed());
    let (a, b) = (d.n0_formula.unwrap(), e.n0_formula.unwrap());
    assert!((a - b).abs() / b < 1e-13);
}
