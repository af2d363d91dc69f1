//! Relatively closed subgroups of `G = <a> ⋉ <w>` acting on `Z_n`, and the
//! one-dimensional affine association schemes they produce.

pub mod affine;
pub mod closure;
pub mod error;
pub mod group;
pub mod lattice;
pub mod normal_form;
pub mod numtheory;
pub mod oracle;
pub mod orbits;
pub mod verify;

pub use error::{Error, Result};
pub use group::{AmbientGroup, GroupElement, SubgroupPresentation};
