//! Exact arithmetic toolkit for constant-dimension subspace codes over small
//! prime fields.
//!
//! The crate covers the whole path from field arithmetic to bounds on
//! `A_q(v,d;k)`: canonical subspaces and Grassmannian enumeration
//! ([`grassmann`]), code verification and derived codes ([`codes`]), closed-form
//! and recursive upper bounds ([`bounds`]), lifted MRD constructions
//! ([`constructions`]), binary linear program models in LP text format
//! ([`ilp`]) and an exact maximum clique search with anytime bounds
//! ([`clique`]). No floating point is used anywhere.

pub mod bounds;
pub mod clique;
pub mod codes;
pub mod constructions;
pub mod gf;
pub mod grassmann;
pub mod ilp;

mod error;

pub use error::Error;
pub use gf::{FieldSpec, MatRows};
pub use grassmann::{gaussian_binomial, Grassmannian, Subspace};
pub use codes::{SubspaceCode, verify};
