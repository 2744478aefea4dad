//! Macdonald polynomials on the truncated cone: construction from the
//! finite operators, the discrete weights, and the orthogonality, norm,
//! Pieri and duality checks built on them.

mod checks;
mod construct;
mod scan;
mod weights;
mod weyl;


use std::fmt::Write as _;

use num_complex::Complex64;

pub use checks::{
    discrete_inner_product, duality_defect, norm_identity_residual, norms_csv,
    orthogonality_report, pieri_residual, s_matrix, OrthogonalityData, OrthogonalityReport,
    SMatrix,
};
pub use construct::{
    construct_macdonald, gram_schmidt_deviation, gram_schmidt_macdonald, Construction,
    CONDITION_LIMIT, CONTINUATION_STEP, GAP_FLOOR,
};
pub use scan::{
    cardinality_generating_function, e7_degenerate_direction, nondegeneracy_scan,
    quasi_minuscule_path, NondegeneracyReport, ScanSample,
};
pub use weights::{
    cone_weights, delta_weight, normalization_constant, principal_specialization, total_mass,
};
pub use weyl::{pair_index, weyl_character, weyl_orthogonality_check, WeylReport};

use crate::macparams::UnitarySpec;
use crate::numeric::cis_pi;
use crate::rational::format_rational;
use crate::rootsys::{RootSystemData, Weight};

/// `m_λ(x) = Σ_{ν∈Wλ} e^ν(x)` with `e^ν(x) = q^{⟨ν,x⟩}`.
pub fn monomial(spec: &UnitarySpec, lambda: &Weight, x: &Weight) -> Complex64 {
    spec.pair()
        .roots()
        .weyl_orbit(lambda)
        .iter()
        .map(|nu| cis_pi(&spec.exp_phase(nu, x)))
        .sum()
}

/// A `W`-invariant polynomial in the orbit-sum basis `m_λ` of `C[P]^W`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricPolynomial {
    pub leading: Weight,
    /// `(weight, coefficient)` pairs, lowest weights first, leading last.
    pub terms: Vec<(Weight, Complex64)>,
}

impl SymmetricPolynomial {
    pub fn coefficient(&self, w: &Weight) -> Complex64 {
        self.terms
            .iter()
            .find(|(v, _)| v == w)
            .map(|(_, c)| *c)
            .unwrap_or_default()
    }

    /// Value at `x` (a point of `E`, typically `ρ̂_g + μ`).
    pub fn eval(&self, spec: &UnitarySpec, x: &Weight) -> Complex64 {
        self.terms
            .iter()
            .map(|(w, c)| c * monomial(spec, w, x))
            .sum()
    }

    /// Text table: the leading weight, then one `coords re im` line per
    /// term, weights in fundamental coordinates.
    pub fn to_text(&self, roots: &RootSystemData) -> String {
        let coords = |w: &Weight| {
            roots
                .fundamental_coords(w)
                .iter()
                .map(format_rational)
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut s = String::new();
        writeln!(s, "leading {}", coords(&self.leading)).unwrap();
        for (w, c) in &self.terms {
            writeln!(s, "{} {:.12e} {:.12e}", coords(w), c.re, c.im).unwrap();
        }
        s
    }
}
