//! Admissible pairs, multiplicity functions and the unitary parameter
//! specialization on which the finite orthogonality lives.

mod tables;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{self, DoubleDouble, Precision, Real};
use crate::rational::{self, q, Q};
use crate::rootsys::{dual_root_system, CartanType, Family, RootSystemData, Weight};

pub use tables::{
    mass_table_checksum, mass_tables, verify_mass_table_checksum, MassFactor, MassTables,
    MASS_TABLE_SHA256,
};

/// Which partner is chosen for `R̂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairKind {
    /// `R̂ = R`
    #[serde(rename = "self")]
    SelfDual,
    /// `R̂ = R∨`
    Dual,
}

impl FromStr for PairKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "self" => Ok(PairKind::SelfDual),
            "dual" => Ok(PairKind::Dual),
            other => Err(Error::Config(format!(
                "pair must be self or dual, got {other:?}"
            ))),
        }
    }
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairKind::SelfDual => "self",
            PairKind::Dual => "dual",
        })
    }
}

/// Length class of a root relative to `R` (through the hat map for roots
/// of `R̂`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootClass {
    Short,
    Long,
}

/// Per-root data of one member of an admissible pair.
#[derive(Clone, Debug)]
pub struct SideData {
    pub roots: Arc<RootSystemData>,
    /// Class of each positive root, aligned with `roots.positive_roots()`.
    pub class: Vec<RootClass>,
    /// `m_α = u_φ / u_α` for each positive root.
    pub m: Vec<i64>,
}

impl SideData {
    pub fn rank(&self) -> usize {
        self.roots.rank()
    }

    /// Class of an arbitrary root (positive or negative) of this side.
    pub fn class_of(&self, root: &Weight) -> RootClass {
        let pos = self.positive_index(root).expect("not a root of this side");
        self.class[pos]
    }

    /// Index of `±root` in the positive root list.
    pub fn positive_index(&self, root: &Weight) -> Option<usize> {
        let pr = self.roots.positive_roots();
        pr.iter()
            .position(|a| a == root)
            .or_else(|| pr.iter().position(|a| &-a == root))
    }
}

/// `(R, R̂)` with `R̂ ∈ {R, R∨}`.
#[derive(Clone, Debug)]
pub struct AdmissiblePair {
    kind: PairKind,
    r: SideData,
    r_hat: SideData,
    u_phi: Q,
    u_theta: Q,
    m: i64,
    swapped: bool,
}

impl AdmissiblePair {
    pub fn new(r: RootSystemData, kind: PairKind) -> Self {
        let r = Arc::new(r);
        let r_hat = match kind {
            PairKind::SelfDual => Arc::clone(&r),
            PairKind::Dual => Arc::new(dual_root_system(&r)),
        };
        let (u_phi, u_theta) = match kind {
            PairKind::SelfDual => (r.long_norm2() / q(2), r.short_norm2() / q(2)),
            PairKind::Dual => (Q::one(), Q::one()),
        };
        let m = (u_phi / u_theta).to_integer();
        let simply_laced = r.is_simply_laced();
        let class_r = |a: &Weight| {
            if !simply_laced && a.norm2() == r.long_norm2() {
                RootClass::Long
            } else {
                RootClass::Short
            }
        };
        let class_hat = |b: &Weight| match kind {
            PairKind::SelfDual => class_r(b),
            PairKind::Dual => class_r(&b.coroot()),
        };
        let m_of = |c: RootClass| match c {
            RootClass::Long => 1,
            RootClass::Short => m,
        };
        let side = |roots: Arc<RootSystemData>, cls: &dyn Fn(&Weight) -> RootClass| {
            let class: Vec<RootClass> = roots.positive_roots().iter().map(cls).collect();
            let mm = class.iter().map(|&c| m_of(c)).collect();
            SideData {
                roots,
                class,
                m: mm,
            }
        };
        let r_side = side(Arc::clone(&r), &class_r);
        let hat_side = side(r_hat, &class_hat);
        Self {
            kind,
            r: r_side,
            r_hat: hat_side,
            u_phi,
            u_theta,
            m,
            swapped: false,
        }
    }

    pub fn build(ty: CartanType, kind: PairKind) -> Result<Self> {
        Ok(Self::new(RootSystemData::build(ty)?, kind))
    }

    /// `(R̂, R)`: the roles of the two systems interchanged. Root classes
    /// are still measured relative to the original `R`; use
    /// [`Multiplicity::for_swapped`] to transport `g`.
    pub fn swapped(&self) -> Self {
        // Relative to R̂, its own short class is R's long class when R̂ = R∨
        // is multiply laced.
        let flip = self.kind == PairKind::Dual && !self.r.roots.is_simply_laced();
        let relabel = |s: &SideData| SideData {
            roots: Arc::clone(&s.roots),
            class: s
                .class
                .iter()
                .map(|&c| match (flip, c) {
                    (false, c) => c,
                    (true, RootClass::Long) => RootClass::Short,
                    (true, RootClass::Short) => RootClass::Long,
                })
                .collect(),
            m: s.m.clone(),
        };
        Self {
            kind: self.kind,
            r: relabel(&self.r_hat),
            r_hat: relabel(&self.r),
            u_phi: self.u_phi,
            u_theta: self.u_theta,
            m: self.m,
            swapped: !self.swapped,
        }
    }

    pub fn kind(&self) -> PairKind {
        self.kind
    }

    pub fn is_swapped(&self) -> bool {
        self.swapped
    }

    pub fn r(&self) -> &SideData {
        &self.r
    }

    pub fn r_hat(&self) -> &SideData {
        &self.r_hat
    }

    pub fn roots(&self) -> &RootSystemData {
        &self.r.roots
    }

    pub fn roots_hat(&self) -> &RootSystemData {
        &self.r_hat.roots
    }

    pub fn u_phi(&self) -> Q {
        self.u_phi
    }

    pub fn u_theta(&self) -> Q {
        self.u_theta
    }

    /// `u_a` for a root of class `c`.
    pub fn u(&self, c: RootClass) -> Q {
        match c {
            RootClass::Long => self.u_phi,
            RootClass::Short => self.u_theta,
        }
    }

    /// `m = u_φ / u_ϑ ∈ {1, 2, 3}`.
    pub fn m(&self) -> i64 {
        self.m
    }

    /// Highest root `ψ` of `R̂`.
    pub fn psi(&self) -> &Weight {
        self.r_hat.roots.highest_root()
    }

    /// `ψ̂∨`, the coroot pairing defining `P_c`.
    pub fn psi_hat_vee(&self) -> Weight {
        match self.kind {
            PairKind::SelfDual => self.r.roots.highest_root().coroot(),
            PairKind::Dual => {
                let psi = self.psi();
                psi.coroot().coroot()
            }
        }
    }

    /// `φ̂∨`, the coroot pairing defining `P̂_c`.
    pub fn phi_hat_vee(&self) -> Weight {
        let phi = self.r.roots.highest_root();
        match self.kind {
            PairKind::SelfDual => phi.coroot(),
            PairKind::Dual => phi.clone(),
        }
    }

    pub fn label(&self) -> String {
        format!("{} {}", self.r.roots.label(), self.kind)
    }
}

/// `g` on the two `(W × ℤ₂)`-orbits of `R ∪ R̂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Multiplicity {
    pub g_short: Q,
    pub g_long: Q,
}

impl Multiplicity {
    pub fn new(g_short: Q, g_long: Q) -> Result<Self> {
        if !g_short.is_positive() || !g_long.is_positive() {
            return Err(Error::Config(format!(
                "multiplicities must be positive, got g_short={g_short}, g_long={g_long}"
            )));
        }
        Ok(Self { g_short, g_long })
    }

    pub fn equal(g: Q) -> Result<Self> {
        Self::new(g, g)
    }

    /// Checked against a pair: simply laced systems have a single orbit.
    pub fn for_pair(self, pair: &AdmissiblePair) -> Result<Self> {
        if pair.roots().is_simply_laced() && self.g_short != self.g_long {
            return Err(Error::Config(format!(
                "{} is simply laced; g_short and g_long must agree",
                pair.roots().label()
            )));
        }
        Ok(self)
    }

    pub fn of(&self, c: RootClass) -> Q {
        match c {
            RootClass::Short => self.g_short,
            RootClass::Long => self.g_long,
        }
    }

    /// The same function viewed from the swapped pair `(R̂, R)`.
    pub fn for_swapped(&self, pair: &AdmissiblePair) -> Self {
        if pair.kind() == PairKind::Dual && !pair.roots().is_simply_laced() {
            Self {
                g_short: self.g_long,
                g_long: self.g_short,
            }
        } else {
            *self
        }
    }

    pub fn default_generic() -> Self {
        Self {
            g_short: Q::new(7, 10),
            g_long: Q::new(11, 20),
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "g_short={}, g_long={}",
            rational::format_rational(&self.g_short),
            rational::format_rational(&self.g_long)
        )
    }
}

/// `(ρ_g, ρ_ϑ, ρ_{φ∖ϑ}, ρ)` for `R`.
#[derive(Clone, Debug, PartialEq)]
pub struct RhoWeights {
    pub rho_g: Weight,
    pub rho_theta: Weight,
    pub rho_long: Weight,
    pub rho: Weight,
}

pub fn rho_weights(pair: &AdmissiblePair, g: &Multiplicity) -> RhoWeights {
    side_rho_weights(pair.r(), g)
}

fn side_rho_weights(side: &SideData, g: &Multiplicity) -> RhoWeights {
    let dim = side.roots.ambient_dim();
    let mut rho_theta = Weight::zero(dim);
    let mut rho_long = Weight::zero(dim);
    for (a, c) in side.roots.positive_roots().iter().zip(&side.class) {
        match c {
            RootClass::Short => rho_theta += a,
            RootClass::Long => rho_long += a,
        }
    }
    let half = Q::new(1, 2);
    let rho_theta = rho_theta * half;
    let rho_long = rho_long * half;
    let rho_g = &(&rho_theta * g.g_short) + &(&rho_long * g.g_long);
    RhoWeights {
        rho: &rho_theta + &rho_long,
        rho_g,
        rho_theta,
        rho_long,
    }
}

/// `h_g = ⟨ρ_g, ψ̂∨⟩ + g_ψ`.
pub fn h_g_value(pair: &AdmissiblePair, g: &Multiplicity) -> Q {
    let rho_g = side_rho_weights(pair.r(), g).rho_g;
    let psi = pair.psi();
    let g_psi = g.of(pair.r_hat().class_of(psi));
    rho_g.dot(&pair.psi_hat_vee()) + g_psi
}

/// A sine factor `sin κ_α y = sin(π y / period)`, `period = m_α (h_g + c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SineScale {
    pub period: Q,
}

impl SineScale {
    pub fn theta(&self, y: &Q) -> Q {
        y / self.period
    }

    pub fn is_zero(&self, y: &Q) -> bool {
        numeric::sin_pi_is_zero(&self.theta(y))
    }

    pub fn sin<R: Real>(&self, y: &Q) -> R {
        R::sin_pi(&self.theta(y))
    }
}

/// The full unitary specialization for one `(pair, g, c)`.
#[derive(Clone, Debug)]
pub struct UnitarySpec {
    pair: AdmissiblePair,
    g: Multiplicity,
    c: i64,
    h_g: Q,
    rho: RhoWeights,
    rho_hat: RhoWeights,
    /// `g_α` per positive root of `R` and of `R̂`.
    g_r: Vec<Q>,
    g_hat: Vec<Q>,
    precision: Precision,
    allow_degenerate: bool,
}

pub fn unitary_spec(pair: &AdmissiblePair, g: &Multiplicity, c: i64) -> Result<UnitarySpec> {
    UnitarySpec::new(pair.clone(), *g, c, false)
}

impl UnitarySpec {
    pub fn new(
        pair: AdmissiblePair,
        g: Multiplicity,
        c: i64,
        allow_degenerate: bool,
    ) -> Result<Self> {
        let g = g.for_pair(&pair)?;
        if c <= 1 {
            return Err(Error::Config(format!(
                "truncation level must satisfy c > 1, got {c}"
            )));
        }
        let ty = pair.roots().cartan_type();
        if e7_degenerate(ty, c) && !allow_degenerate {
            return Err(Error::Config(format!(
                "E7 requires that c is not a proper multiple of 6, got c = {c} (the joint \
                 spectrum of the small-weight operators degenerates); pass --allow-degenerate to override"
            )));
        }
        let h_g = h_g_value(&pair, &g);
        let rho = side_rho_weights(pair.r(), &g);
        let rho_hat = side_rho_weights(pair.r_hat(), &g);
        let g_r = pair.r().class.iter().map(|&c| g.of(c)).collect();
        let g_hat = pair.r_hat().class.iter().map(|&c| g.of(c)).collect();
        let spec = Self {
            pair,
            g,
            c,
            h_g,
            rho,
            rho_hat,
            g_r,
            g_hat,
            precision: Precision::Double,
            allow_degenerate,
        };
        let defect = spec.truncation_defect();
        if defect > 1e-12 {
            return Err(Error::Invariant(format!(
                "truncation relation violated by {defect:e}"
            )));
        }
        Ok(spec)
    }

    pub fn with_precision(mut self, p: Precision) -> Self {
        self.precision = p;
        self
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn allow_degenerate(&self) -> bool {
        self.allow_degenerate
    }

    /// Specification of the swapped pair `(R̂, R)` with the same `g`, `c`.
    pub fn swapped(&self) -> UnitarySpec {
        let pair = self.pair.swapped();
        let g = self.g.for_swapped(&self.pair);
        let mut s = UnitarySpec::new(pair, g, self.c, true).expect("swapping preserves validity");
        s.allow_degenerate = self.allow_degenerate;
        s.precision = self.precision;
        s
    }

    pub fn pair(&self) -> &AdmissiblePair {
        &self.pair
    }

    pub fn g(&self) -> &Multiplicity {
        &self.g
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn h_g(&self) -> Q {
        self.h_g
    }

    /// `h_g + c`.
    pub fn level(&self) -> Q {
        self.h_g + q(self.c)
    }

    pub fn kappa(&self) -> f64 {
        std::f64::consts::PI / rational::to_f64(&(self.pair.u_phi() * self.level()))
    }

    pub fn rho(&self) -> &RhoWeights {
        &self.rho
    }

    pub fn rho_hat(&self) -> &RhoWeights {
        &self.rho_hat
    }

    pub fn rho_g(&self) -> &Weight {
        &self.rho.rho_g
    }

    pub fn rho_hat_g(&self) -> &Weight {
        &self.rho_hat.rho_g
    }

    /// `g_α` aligned with the positive roots of `R`.
    pub fn g_r(&self) -> &[Q] {
        &self.g_r
    }

    /// `g_α` aligned with the positive roots of `R̂`.
    pub fn g_hat(&self) -> &[Q] {
        &self.g_hat
    }

    /// Sine scale `κ_α` for a root of `R` (`hat = false`) or `R̂`.
    pub fn scale_for_m(&self, m: i64) -> SineScale {
        SineScale {
            period: q(m) * self.level(),
        }
    }

    pub fn scale_phi(&self) -> SineScale {
        self.scale_for_m(1)
    }

    pub fn scale_theta(&self) -> SineScale {
        self.scale_for_m(self.pair.m())
    }

    /// Phase of `e^λ(x) = exp(2πi⟨λ,x⟩ / (u_φ(h_g+c)))`, as a multiple of π.
    pub fn exp_phase(&self, lambda: &Weight, x: &Weight) -> Q {
        q(2) * lambda.dot(x) / (self.pair.u_phi() * self.level())
    }

    pub fn exp_weight(&self, lambda: &Weight, x: &Weight) -> Complex64 {
        numeric::cis_pi(&self.exp_phase(lambda, x))
    }

    /// `q_a` for a root of class `c`.
    pub fn q_param(&self, c: RootClass) -> Complex64 {
        let m = self.m_of(c);
        numeric::cis_pi(&(q(2) / (q(m) * self.level())))
    }

    /// `t_a` for a root of class `c`.
    pub fn t_param(&self, c: RootClass) -> Complex64 {
        let m = self.m_of(c);
        numeric::cis_pi(&(q(2) * self.g.of(c) / (q(m) * self.level())))
    }

    /// Phase of `t_α^k` as a multiple of π.
    pub fn t_phase(&self, g_alpha: Q, m_alpha: i64, k: i64) -> Q {
        q(2 * k) * g_alpha / (q(m_alpha) * self.level())
    }

    pub fn m_of(&self, c: RootClass) -> i64 {
        match c {
            RootClass::Long => 1,
            RootClass::Short => self.pair.m(),
        }
    }

    /// `|t_ϑ^{m⟨ρ_ϑ,ψ̂∨⟩} t_φ^{⟨ρ_{φ∖ϑ},ψ̂∨⟩} t_ψ q_φ^c − 1|`.
    pub fn truncation_defect(&self) -> f64 {
        let psv = self.pair.psi_hat_vee();
        let a = self.rho.rho_theta.dot(&psv) * q(self.pair.m());
        let b = self.rho.rho_long.dot(&psv);
        let pow = |z: Complex64, e: Q| -> Complex64 {
            let e = rational::as_integer(&e).expect("integral exponent");
            z.powi(e as i32)
        };
        let psi_class = self.pair.r_hat().class_of(self.pair.psi());
        let lhs = pow(self.t_param(RootClass::Short), a)
            * pow(self.t_param(RootClass::Long), b)
            * self.t_param(psi_class)
            * self.q_param(RootClass::Long).powi(self.c as i32);
        (lhs - Complex64::new(1.0, 0.0)).norm()
    }

    /// Dominant `λ ∈ P⁺` with `⟨λ, ψ̂∨⟩ ≤ c`.
    pub fn in_p_c(&self, lambda: &Weight) -> bool {
        let r = self.pair.roots();
        r.is_dominant(lambda)
            && r.in_weight_lattice(lambda)
            && lambda.dot(&self.pair.psi_hat_vee()) <= q(self.c)
    }

    /// Dominant `μ ∈ P̂⁺` with `⟨μ, φ̂∨⟩ ≤ c`.
    pub fn in_p_hat_c(&self, mu: &Weight) -> bool {
        let r = self.pair.roots_hat();
        r.is_dominant(mu)
            && r.in_weight_lattice(mu)
            && mu.dot(&self.pair.phi_hat_vee()) <= q(self.c)
    }

    /// Per-root data of `R̂` in the form used by operator coefficients:
    /// `(α, α∨, g_α, scale)` for each positive root.
    pub fn hat_root_data(&self) -> Vec<RootDatum> {
        root_data(self.pair.r_hat(), &self.g_hat, self)
    }

    pub fn r_root_data(&self) -> Vec<RootDatum> {
        root_data(self.pair.r(), &self.g_r, self)
    }
}

/// Everything a coefficient formula needs about one positive root.
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub root: Weight,
    pub coroot: Weight,
    pub g: Q,
    pub m: i64,
    pub scale: SineScale,
    pub class: RootClass,
}

fn root_data(side: &SideData, g: &[Q], spec: &UnitarySpec) -> Vec<RootDatum> {
    side.roots
        .positive_roots()
        .iter()
        .zip(side.roots.positive_coroots())
        .enumerate()
        .map(|(i, (a, ac))| RootDatum {
            root: a.clone(),
            coroot: ac.clone(),
            g: g[i],
            m: side.m[i],
            scale: spec.scale_for_m(side.m[i]),
            class: side.class[i],
        })
        .collect()
}

fn e7_degenerate(ty: CartanType, c: i64) -> bool {
    ty.family == Family::E && ty.rank == 7 && c >= 12 && c % 6 == 0
}

/// `(a : κ)_l = 2^l sin(κa) sin κ(a+1) ⋯ sin κ(a+l−1)`.
pub fn trig_pochhammer(a: f64, kappa: f64, l: u32) -> f64 {
    (0..l).fold(1.0, |acc, j| acc * 2.0 * (kappa * (a + j as f64)).sin())
}

/// Exact-argument Pochhammer symbol `(a : κ)_l` with `κ` given by a scale.
pub fn pochhammer<R: Real>(a: &Q, scale: SineScale, l: i64) -> R {
    debug_assert!(l >= 0);
    let two = R::from_f64(2.0);
    (0..l).fold(R::one(), |acc, j| acc * two * scale.sin::<R>(&(a + q(j))))
}

/// Roots of `R̂⁺` violating `⟨ρ̂_g, α∨⟩ ∉ {1, m_α h_g − 1}`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Regularity {
    pub regular: bool,
    pub violations: Vec<String>,
}

pub fn is_regular_g(spec: &UnitarySpec) -> Regularity {
    let rho_hat = spec.rho_hat_g();
    let mut violations = Vec::new();
    for d in spec.hat_root_data() {
        let p = rho_hat.dot(&d.coroot);
        if p == Q::one() || p == q(d.m) * spec.h_g() - Q::one() {
            violations.push(format!(
                "{} (pairing {})",
                d.root,
                rational::format_rational(&p)
            ));
        }
    }
    Regularity {
        regular: violations.is_empty(),
        violations,
    }
}

/// Closed-form total mass `N_0 = Ind(R) · N_c` with its ingredients.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MassFormula {
    /// `N_c` from the product tables.
    pub n_c_table: f64,
    /// `N_c` from the positive-root product (simply laced or `R̂ = R∨` only).
    pub n_c_root_product: Option<f64>,
    /// `N_c` from the exponent product (equal labels only).
    pub n_c_exponents: Option<f64>,
    pub index: i64,
    pub n_0: f64,
}

pub fn total_mass_formula(spec: &UnitarySpec) -> Result<MassFormula> {
    match spec.precision() {
        Precision::Double => total_mass_formula_in::<f64>(spec),
        Precision::Extended => total_mass_formula_in::<DoubleDouble>(spec),
    }
}

fn total_mass_formula_in<R: Real>(spec: &UnitarySpec) -> Result<MassFormula> {
    let tables = mass_tables()?;
    let n_c_table: R = tables.evaluate(spec)?;
    let r = spec.pair().roots();
    let index = r.index();
    let simply_laced = r.is_simply_laced();
    let n_c_root_product = if simply_laced || spec.pair().kind() == PairKind::Dual {
        Some(nc_root_product::<R>(spec).to_f64())
    } else {
        None
    };
    let n_c_exponents = if spec.g().g_short == spec.g().g_long
        && (simply_laced || spec.pair().kind() == PairKind::Dual)
    {
        let g = spec.g().g_short;
        let s = spec.scale_phi();
        Some(
            r.exponents()
                .iter()
                .fold(R::one(), |acc, &e| {
                    acc * pochhammer::<R>(&(Q::one() + g * q(e)), s, spec.c() - 1)
                })
                .to_f64(),
        )
    } else {
        None
    };
    let table = n_c_table.to_f64();
    for alt in [n_c_root_product, n_c_exponents].into_iter().flatten() {
        let rel = (alt - table).abs() / table.abs();
        if rel > 1e-10 {
            return Err(Error::Invariant(format!(
                "total mass product forms disagree: table {table:e} vs {alt:e}"
            )));
        }
    }
    Ok(MassFormula {
        n_c_table: table,
        n_c_root_product,
        n_c_exponents,
        index,
        n_0: (n_c_table * R::from_f64(index as f64)).to_f64(),
    })
}

/// `Π_{α∈R⁺} (1+⟨ρ_g,α∨⟩ : κ_α)_{c−1} / Π_{α∈R⁺∖I} (1+⟨ρ_g,α∨⟩−g_α : κ_α)_{c−1}`.
fn nc_root_product<R: Real>(spec: &UnitarySpec) -> R {
    let r = spec.pair().roots();
    let rho_g = spec.rho_g();
    let mut acc = R::one();
    for (i, d) in spec.r_root_data().iter().enumerate() {
        let p = rho_g.dot(&d.coroot);
        acc = acc * pochhammer::<R>(&(Q::one() + p), d.scale, spec.c() - 1);
        if r.heights()[i] > 1 {
            acc = acc / pochhammer::<R>(&(Q::one() + p - d.g), d.scale, spec.c() - 1);
        }
    }
    acc
}

#[cfg(test)]
mod tests;
