//! One-dimensional affine groups `H ⋉ F_q^+` with `H <= ΓL_1(q)`, their
//! schemes, and scheme isomorphism at desk scale.

pub mod classify;
pub mod field;
pub mod iso;
pub mod scheme;

pub use classify::{affine_classify, affine_maximal, affine_rank_four, minimal_schemes, AffineMode, AffineReport};
pub use field::FiniteField;
pub use iso::{scheme_isomorphic, scheme_isomorphic_transitive, IsoVerdict};
pub use scheme::{gamma_l1, AssociationScheme};
