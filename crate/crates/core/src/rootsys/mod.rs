//! Irreducible reduced crystallographic root systems in Bourbaki
//! coordinates, with exact lattice arithmetic and Weyl orbit machinery.

mod orbit;
mod types;
mod weight;

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, q, Q};

pub use orbit::{OrbitCache, WeylWord};
pub use types::{CartanType, Family};
pub use weight::Weight;

/// Classification of a nonzero dominant weight by its coroot pairings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightClass {
    Minuscule,
    QuasiMinuscule,
    Small,
    NotSmall,
}

impl WeightClass {
    pub fn is_small(self) -> bool {
        !matches!(self, WeightClass::NotSmall)
    }
}

/// Immutable tables for one irreducible reduced root system.
///
/// The positive system is fixed by the simple roots. Positive roots are
/// stored in ascending height, ties broken by coordinates, so iteration
/// order is reproducible.
#[derive(Clone, Debug)]
pub struct RootSystemData {
    cartan_type: CartanType,
    /// Built as the coroot system of a Bourbaki realization.
    is_coroot_system: bool,
    simple_roots: Vec<Weight>,
    simple_coroots: Vec<Weight>,
    positive_roots: Vec<Weight>,
    positive_coroots: Vec<Weight>,
    heights: Vec<i64>,
    fundamental_weights: Vec<Weight>,
    cartan: Vec<Vec<i64>>,
    /// Inverse Cartan matrix; row `i` gives `ω_i` in the simple root basis.
    cartan_inverse: Vec<Vec<Q>>,
    highest_root: Weight,
    highest_short_root: Weight,
    coxeter_number: i64,
    dual_coxeter_number: i64,
    exponents: Vec<i64>,
    index: i64,
    weyl_order: u128,
    rho: Weight,
    rho_vee: Weight,
    short_norm2: Q,
    long_norm2: Q,
    orbits: Arc<OrbitCache>,
}

/// Build the root system of the given type in Bourbaki coordinates.
pub fn build_root_system(family: Family, rank: usize) -> Result<RootSystemData> {
    let ty = CartanType::new(family, rank)?;
    RootSystemData::from_simple_roots(ty, ty.bourbaki_simple_roots(), false)
}

/// Replace every root by its coroot; simple root numbering is preserved.
pub fn dual_root_system(r: &RootSystemData) -> RootSystemData {
    RootSystemData::from_simple_roots(
        r.cartan_type.dual(),
        r.simple_coroots.clone(),
        !r.is_coroot_system,
    )
    .expect("coroots of a root system form a root system")
}

impl RootSystemData {
    pub fn build(ty: CartanType) -> Result<Self> {
        build_root_system(ty.family, ty.rank)
    }

    fn from_simple_roots(
        cartan_type: CartanType,
        simple_roots: Vec<Weight>,
        is_coroot_system: bool,
    ) -> Result<Self> {
        let n = simple_roots.len();
        let simple_coroots: Vec<Weight> = simple_roots.iter().map(Weight::coroot).collect();
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let v = simple_roots[i].dot(&simple_coroots[j]);
                cartan[i][j] = rational::as_integer(&v).ok_or_else(|| {
                    Error::Invariant(format!("non-integral Cartan entry {v} for {cartan_type}"))
                })?;
            }
        }
        let cartan_q: Vec<Vec<Q>> = cartan
            .iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect();
        let cartan_inverse = rational::inverse(&cartan_q)
            .ok_or_else(|| Error::Invariant(format!("singular Cartan matrix for {cartan_type}")))?;
        let index = rational::as_integer(&rational::determinant(&cartan_q))
            .ok_or_else(|| Error::Invariant("non-integral Cartan determinant".into()))?;

        let dim = simple_roots[0].dim();
        let fundamental_weights: Vec<Weight> = (0..n)
            .map(|i| {
                let mut w = Weight::zero(dim);
                for (j, a) in simple_roots.iter().enumerate() {
                    w += &(a * cartan_inverse[i][j]);
                }
                w
            })
            .collect();

        // All roots by reflection closure of the simple roots.
        let mut seen: HashSet<Weight> = simple_roots.iter().cloned().collect();
        let mut queue: VecDeque<Weight> = simple_roots.iter().cloned().collect();
        while let Some(v) = queue.pop_front() {
            for (a, ac) in simple_roots.iter().zip(&simple_coroots) {
                let w = v.reflect(a, ac);
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }

        let mut partial = Self {
            cartan_type,
            is_coroot_system,
            simple_coroots,
            positive_roots: Vec::new(),
            positive_coroots: Vec::new(),
            heights: Vec::new(),
            fundamental_weights,
            cartan,
            cartan_inverse,
            highest_root: Weight::zero(dim),
            highest_short_root: Weight::zero(dim),
            coxeter_number: 0,
            dual_coxeter_number: 0,
            exponents: Vec::new(),
            index,
            weyl_order: 0,
            rho: Weight::zero(dim),
            rho_vee: Weight::zero(dim),
            short_norm2: Q::zero(),
            long_norm2: Q::zero(),
            orbits: Arc::new(OrbitCache::default()),
            simple_roots,
        };

        let mut positive: Vec<(i64, Weight)> = seen
            .into_iter()
            .filter_map(|r| {
                let c = partial.simple_root_coefficients(&r);
                if c.iter().all(|x| !x.is_negative()) {
                    let h: Q = c.iter().sum();
                    Some((h.to_integer(), r))
                } else {
                    None
                }
            })
            .collect();
        positive.sort();
        partial.heights = positive.iter().map(|(h, _)| *h).collect();
        partial.positive_roots = positive.into_iter().map(|(_, r)| r).collect();
        partial.positive_coroots = partial.positive_roots.iter().map(Weight::coroot).collect();

        let norms: BTreeSet<Q> = partial.positive_roots.iter().map(Weight::norm2).collect();
        partial.short_norm2 = *norms.first().unwrap();
        partial.long_norm2 = *norms.last().unwrap();
        partial.highest_root = partial.positive_roots.last().unwrap().clone();
        partial.highest_short_root = partial
            .positive_roots
            .iter()
            .rev()
            .find(|r| r.norm2() == partial.short_norm2)
            .unwrap()
            .clone();

        let half = Q::new(1, 2);
        let mut rho = Weight::zero(dim);
        let mut rho_vee = Weight::zero(dim);
        for (a, ac) in partial.positive_roots.iter().zip(&partial.positive_coroots) {
            rho += a;
            rho_vee += ac;
        }
        partial.rho = rho * half;
        partial.rho_vee = rho_vee * half;

        let nroots = 2 * partial.positive_roots.len() as i64;
        partial.coxeter_number = nroots / n as i64;
        let phi_vee = partial.highest_root.coroot();
        partial.dual_coxeter_number = partial.rho.dot(&phi_vee).to_integer() + 1;

        // Exponent m occurs (#roots of height m) - (#roots of height m+1) times.
        let h = partial.coxeter_number;
        let count = |k: i64| partial.heights.iter().filter(|&&x| x == k).count() as i64;
        let mut exponents = Vec::new();
        for m in 1..h {
            for _ in 0..(count(m) - count(m + 1)).max(0) {
                exponents.push(m);
            }
        }
        partial.exponents = exponents;
        partial.weyl_order = partial.exponents.iter().map(|&e| (e + 1) as u128).product();
        Ok(partial)
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn label(&self) -> String {
        self.cartan_type.to_string()
    }

    pub fn is_coroot_system(&self) -> bool {
        self.is_coroot_system
    }

    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.simple_roots[0].dim()
    }

    pub fn is_simply_laced(&self) -> bool {
        self.short_norm2 == self.long_norm2
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Weight] {
        &self.simple_coroots
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    pub fn positive_coroots(&self) -> &[Weight] {
        &self.positive_coroots
    }

    /// Heights of the positive roots, aligned with [`Self::positive_roots`].
    pub fn heights(&self) -> &[i64] {
        &self.heights
    }

    /// All roots: positive roots followed by their negatives.
    pub fn roots(&self) -> impl Iterator<Item = (Weight, Weight)> + '_ {
        let pos = self
            .positive_roots
            .iter()
            .zip(&self.positive_coroots)
            .map(|(a, c)| (a.clone(), c.clone()));
        let neg = self
            .positive_roots
            .iter()
            .zip(&self.positive_coroots)
            .map(|(a, c)| (-a, -c));
        pos.chain(neg)
    }

    pub fn fundamental_weights(&self) -> &[Weight] {
        &self.fundamental_weights
    }

    /// `cartan()[i][j] = ⟨α_i, α_j∨⟩`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn highest_root(&self) -> &Weight {
        &self.highest_root
    }

    pub fn highest_short_root(&self) -> &Weight {
        &self.highest_short_root
    }

    pub fn coxeter_number(&self) -> i64 {
        self.coxeter_number
    }

    pub fn dual_coxeter_number(&self) -> i64 {
        self.dual_coxeter_number
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    /// `Ind(R) = |P/Q|`.
    pub fn index(&self) -> i64 {
        self.index
    }

    /// `|W|` as the product of `(e_k + 1)` over the exponents.
    pub fn weyl_order(&self) -> u128 {
        self.weyl_order
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn rho_vee(&self) -> &Weight {
        &self.rho_vee
    }

    pub fn short_norm2(&self) -> Q {
        self.short_norm2
    }

    pub fn long_norm2(&self) -> Q {
        self.long_norm2
    }

    pub fn is_short(&self, root: &Weight) -> bool {
        root.norm2() == self.short_norm2
    }

    pub fn is_long(&self, root: &Weight) -> bool {
        root.norm2() == self.long_norm2 && !self.is_simply_laced()
    }

    pub fn number_of_short_simple_roots(&self) -> usize {
        if self.is_simply_laced() {
            return self.rank();
        }
        self.simple_roots
            .iter()
            .filter(|a| self.is_short(a))
            .count()
    }

    /// `(⟨λ, α_1∨⟩, …, ⟨λ, α_n∨⟩)`.
    pub fn fundamental_coords(&self, lambda: &Weight) -> Vec<Q> {
        self.simple_coroots.iter().map(|c| lambda.dot(c)).collect()
    }

    /// Integer fundamental coordinates; `None` off the weight lattice.
    pub fn fundamental_int_coords(&self, lambda: &Weight) -> Option<Vec<i64>> {
        self.fundamental_coords(lambda)
            .iter()
            .map(rational::as_integer)
            .collect()
    }

    pub fn from_fundamental(&self, coeffs: &[Q]) -> Weight {
        let mut w = Weight::zero(self.ambient_dim());
        for (c, om) in coeffs.iter().zip(&self.fundamental_weights) {
            if !c.is_zero() {
                w += &(om * *c);
            }
        }
        w
    }

    pub fn from_fundamental_ints(&self, coeffs: &[i64]) -> Weight {
        let c: Vec<Q> = coeffs.iter().map(|&x| q(x)).collect();
        self.from_fundamental(&c)
    }

    /// Coefficients of `v` in the simple root basis (projecting onto the
    /// span of the roots).
    pub fn simple_root_coefficients(&self, v: &Weight) -> Vec<Q> {
        let p = self.fundamental_coords(v);
        let n = self.rank();
        (0..n)
            .map(|j| (0..n).fold(Q::zero(), |acc, i| acc + p[i] * self.cartan_inverse[i][j]))
            .collect()
    }

    /// `⟨λ, ρ∨⟩`, the height of `λ`.
    pub fn height(&self, lambda: &Weight) -> Q {
        lambda.dot(&self.rho_vee)
    }

    pub fn is_dominant(&self, lambda: &Weight) -> bool {
        self.simple_coroots
            .iter()
            .all(|c| !lambda.dot(c).is_negative())
    }

    pub fn is_regular(&self, lambda: &Weight) -> bool {
        self.positive_coroots
            .iter()
            .all(|c| !lambda.dot(c).is_zero())
    }

    /// True iff `λ` lies in the weight lattice `P`.
    pub fn in_weight_lattice(&self, lambda: &Weight) -> bool {
        self.fundamental_coords(lambda)
            .iter()
            .all(|x| x.is_integer())
            && &self.from_fundamental(&self.fundamental_coords(lambda)) == lambda
    }

    pub fn in_root_lattice(&self, lambda: &Weight) -> bool {
        self.in_weight_lattice(lambda)
            && self
                .simple_root_coefficients(lambda)
                .iter()
                .all(|x| x.is_integer())
    }

    /// `μ ≤ λ` in the dominance order: `λ − μ ∈ Q⁺`.
    pub fn dominance_leq(&self, mu: &Weight, lambda: &Weight) -> bool {
        let d = lambda - mu;
        self.in_weight_lattice(&d)
            && self
                .simple_root_coefficients(&d)
                .iter()
                .all(|x| x.is_integer() && !x.is_negative())
    }

    /// Simple reflection `s_i` (0-based).
    pub fn reflect_simple(&self, lambda: &Weight, i: usize) -> Weight {
        lambda.reflect(&self.simple_roots[i], &self.simple_coroots[i])
    }

    /// Dominant representative `λ⁺` and the shortest word `w` with `wλ = λ⁺`.
    pub fn dominant_representative(&self, lambda: &Weight) -> (Weight, WeylWord) {
        let mut cur = lambda.clone();
        let mut letters = Vec::new();
        loop {
            let neg = self
                .simple_coroots
                .iter()
                .position(|c| cur.dot(c).is_negative());
            match neg {
                Some(i) => {
                    cur = self.reflect_simple(&cur, i);
                    letters.push(i);
                }
                None => return (cur, WeylWord::new(letters)),
            }
        }
    }

    /// The orbit `Wλ`, sorted by height descending then fundamental
    /// coordinates lexicographically. Cached per dominant representative.
    pub fn weyl_orbit(&self, lambda: &Weight) -> Arc<Vec<Weight>> {
        let (dom, _) = self.dominant_representative(lambda);
        self.orbits
            .get_or_insert_with(&dom, || self.enumerate_orbit(&dom, None))
    }

    /// Orbit of `λ` under the subgroup generated by the listed simple
    /// reflections (all of them when `generators` is `None`).
    pub(crate) fn enumerate_orbit(
        &self,
        lambda: &Weight,
        generators: Option<&[usize]>,
    ) -> Vec<Weight> {
        let all: Vec<usize> = (0..self.rank()).collect();
        let gens = generators.unwrap_or(&all);
        let start = self.fundamental_coords(lambda);
        let base_offset = lambda - &self.from_fundamental(&start);
        let mut seen: HashSet<Vec<Q>> = HashSet::new();
        seen.insert(start.clone());
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &i in gens {
                let k = v[i];
                if k.is_zero() {
                    continue;
                }
                let w: Vec<Q> = v
                    .iter()
                    .zip(&self.cartan[i])
                    .map(|(x, &a)| x - k * q(a))
                    .collect();
                if !seen.contains(&w) {
                    seen.insert(w.clone());
                    queue.push_back(w);
                }
            }
        }
        let mut out: Vec<(Q, Vec<Q>)> = seen
            .into_iter()
            .map(|c| {
                let h = (0..self.rank())
                    .map(|i| c[i] * self.cartan_inverse[i].iter().sum::<Q>())
                    .sum::<Q>();
                (h, c)
            })
            .collect();
        out.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
        out.into_iter()
            .map(|(_, c)| &self.from_fundamental(&c) + &base_offset)
            .collect()
    }

    /// Dominant weights `μ ≤ λ` (λ dominant), sorted by height ascending.
    pub fn dominant_weights_below(&self, lambda: &Weight) -> Vec<Weight> {
        let mut seen: HashSet<Weight> = HashSet::from([lambda.clone()]);
        let mut queue = VecDeque::from([lambda.clone()]);
        while let Some(mu) = queue.pop_front() {
            for a in &self.positive_roots {
                let nu = &mu - a;
                if self.is_dominant(&nu) && !seen.contains(&nu) {
                    seen.insert(nu.clone());
                    queue.push_back(nu);
                }
            }
        }
        let mut out: Vec<Weight> = seen.into_iter().collect();
        self.sort_by_height(&mut out);
        out
    }

    /// Sort by height ascending, then lexicographically on fundamental
    /// coordinates. This is a linear extension of the dominance order.
    pub fn sort_by_height(&self, ws: &mut [Weight]) {
        ws.sort_by_cached_key(|w| (self.height(w), self.fundamental_coords(w)));
    }

    /// `P(λ) = ⋃_{μ ∈ P⁺, μ ≤ λ} Wμ`.
    pub fn saturated_set(&self, lambda: &Weight) -> Vec<Weight> {
        let mut out = Vec::new();
        for mu in self.dominant_weights_below(lambda) {
            out.extend(self.weyl_orbit(&mu).iter().cloned());
        }
        out
    }

    /// Maximum of `⟨ω, α∨⟩` over positive roots.
    pub fn max_coroot_pairing(&self, omega: &Weight) -> Q {
        self.positive_coroots
            .iter()
            .map(|c| omega.dot(c))
            .max()
            .unwrap_or_else(Q::zero)
    }

    pub fn classify_weight(&self, omega: &Weight) -> WeightClass {
        let one = Q::one();
        let two = q(2);
        let mut max_other = Q::zero();
        let mut max_all = Q::zero();
        for (a, c) in self.positive_roots.iter().zip(&self.positive_coroots) {
            let p = omega.dot(c);
            if p > max_all {
                max_all = p;
            }
            if a != omega && p > max_other {
                max_other = p;
            }
        }
        if max_all <= one {
            WeightClass::Minuscule
        } else if max_other <= one {
            WeightClass::QuasiMinuscule
        } else if max_all <= two {
            WeightClass::Small
        } else {
            WeightClass::NotSmall
        }
    }

    /// Orbit of `ω` under the stabilizer `W_μ`, computed through the
    /// standard parabolic subgroup of `μ⁺` conjugated by `w_μ`.
    pub fn parabolic_stabilizer_orbit(&self, mu: &Weight, omega: &Weight) -> Vec<Weight> {
        let (mu_dom, w) = self.dominant_representative(mu);
        let gens = self.stabilizer_generators(&mu_dom);
        let moved = w.apply(self, omega);
        let orbit = self.enumerate_orbit(&moved, Some(&gens));
        orbit.iter().map(|x| w.apply_inverse(self, x)).collect()
    }

    /// Simple reflections fixing a dominant weight.
    pub fn stabilizer_generators(&self, dominant: &Weight) -> Vec<usize> {
        self.simple_coroots
            .iter()
            .enumerate()
            .filter(|(_, c)| dominant.dot(c).is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// Nonzero dominant small weights, sorted by height.
    pub fn small_weights(&self) -> Vec<Weight> {
        // Every small weight pairs to at most 2 with the highest coroot.
        let top = self.highest_short_root.coroot();
        let marks: Vec<i64> = self
            .fundamental_weights
            .iter()
            .map(|w| w.dot(&top).to_integer())
            .collect();
        let mut out: Vec<Weight> = bounded_dominant_coords(&marks, 2)
            .into_iter()
            .filter(|c| c.iter().any(|&x| x != 0))
            .map(|c| self.from_fundamental_ints(&c))
            .filter(|w| self.classify_weight(w).is_small())
            .collect();
        self.sort_by_height(&mut out);
        out
    }

    /// `-w_0 ω`, the dominant weight in the orbit of `-ω`.
    pub fn star(&self, omega: &Weight) -> Weight {
        self.dominant_representative(&-omega).0
    }

    /// Sign `det(w)` of the Weyl element carrying a regular `λ` to the
    /// dominant chamber.
    pub fn chamber_sign(&self, lambda: &Weight) -> i32 {
        let neg = self
            .positive_coroots
            .iter()
            .filter(|c| lambda.dot(c).is_negative())
            .count();
        if neg % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Plain-text fixture dump: one positive root per line.
    pub fn dump_roots(&self) -> String {
        let mut s = String::new();
        writeln!(
            s,
            "# {} positive roots ({})",
            self.label(),
            self.positive_roots.len()
        )
        .unwrap();
        for r in &self.positive_roots {
            writeln!(s, "{r}").unwrap();
        }
        s
    }
}

/// All nonnegative integer vectors `a` with `Σ a_i marks_i ≤ bound`.
pub(crate) fn bounded_dominant_coords(marks: &[i64], bound: i64) -> Vec<Vec<i64>> {
    fn rec(marks: &[i64], bound: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == marks.len() {
            out.push(prefix.clone());
            return;
        }
        let m = marks[prefix.len()];
        let mut k = 0;
        while k * m <= bound {
            prefix.push(k);
            rec(marks, bound - k * m, prefix, out);
            prefix.pop();
            k += 1;
        }
    }
    assert!(marks.iter().all(|&m| m > 0), "marks must be positive");
    let mut out = Vec::new();
    rec(marks, bound, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests;
