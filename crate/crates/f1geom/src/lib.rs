//! Exact combinatorial algebra at desk scale.
//!
//! The crate implements q-analogue counting, linear algebra over the
//! monoids `F1^n = {0} ∪ μ_n`, Coxeter systems and their complexes,
//! typed incidence geometries with a catalog of thin examples, finite
//! Tits systems with Bruhat decompositions, and the monomial braid
//! representation. Every identity is checked by exact arithmetic or
//! brute-force enumeration; nothing is approximated.

pub mod error;
pub mod qnum;
pub mod group;
pub mod toddcox;
pub mod f1linalg;
pub mod coxeter;
pub mod incidence;
pub mod bnpair;
pub mod braids;

pub use error::{Error, Result};
pub use group::EnumeratedGroup;
pub use incidence::Geometry;
pub use qnum::QPoly;
