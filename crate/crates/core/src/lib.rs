//! Exact computer algebra for linked modules of split solvable Lie algebras.
//!
//! The crate works with Lie algebras of the form `<x> ⋉ a`, where `ad x` acts
//! diagonalizably on the abelian ideal `a`. It provides
//!
//! * exact scalar and polynomial arithmetic over Q and GF(p) ([`field`],
//!   [`poly`]),
//! * exact dense linear algebra: companion forms, the Pascal-type
//!   intertwiner, Sylvester solves and block clearing ([`matrix`],
//!   [`linalg`]),
//! * construction of the canonical family of linked representations from an
//!   invariant tuple ([`construction`]),
//! * analysis of arbitrary representations: nilpotency series,
//!   admissibility, uniseriality, linkedness ([`analysis`]),
//! * classification of linked representations into canonical invariant
//!   tuples together with exact basis changes ([`classify`]),
//! * a brute-force oracle over small finite fields that enumerates full
//!   submodule lattices and searches for intertwiners ([`oracle`]).
//!
//! Everything is exact: no floating point appears anywhere.

pub mod analysis;
pub mod classify;
pub mod construction;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod json;
pub mod linalg;
pub mod matrix;
pub mod oracle;
pub mod poly;

pub use error::{Error, Result};
pub use field::{FieldElem, FieldSpec};
pub use matrix::Mat;
pub use poly::Poly;
