//! Macdonald polynomials at roots of unity for admissible pairs of root
//! systems: lattice combinatorics, finite difference operators, explicit
//! construction and numerical verification of the orthogonality and norm
//! identities.

pub mod error;
pub mod harness;
pub mod macparams;
pub mod numeric;
pub mod operators;
pub mod polynomials;
pub mod rational;
pub mod rootsys;

pub use error::{Error, Result};
pub use rational::Q;
pub use rootsys::{
    build_root_system, dual_root_system, CartanType, Family, RootSystemData, Weight, WeightClass,
    WeylWord,
};
