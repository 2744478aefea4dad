//! Fixtures shared by the benches in `benches/`.

use macdonald_core::macparams::{AdmissiblePair, Multiplicity, PairKind, UnitarySpec};
use macdonald_core::rational::frac;
use macdonald_core::rootsys::CartanType;

/// Unitary specialization at the generic sample `g = (7/10, 11/20)`.
pub fn generic_spec(label: &str, kind: PairKind, c: i64) -> UnitarySpec {
    let ty = CartanType::parse(label, None).expect("valid label");
    let pair = AdmissiblePair::build(ty, kind).expect("admissible");
    let g = if ty.is_simply_laced() {
        Multiplicity::equal(frac(7, 10))
    } else {
        Multiplicity::new(frac(7, 10), frac(11, 20))
    }
    .expect("positive g");
    UnitarySpec::new(pair, g, c, false).expect("valid spec")
}
