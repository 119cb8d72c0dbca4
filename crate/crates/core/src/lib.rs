//! Exact-arithmetic engine for even Hecke symmetries.
//!
//! Given an R-matrix solving the braid-form Yang–Baxter equation together
//! with the Hecke condition `(q·id − R)(q⁻¹·id + R) = 0`, this crate builds
//! the associated representation-theoretic data over an exact ground field
//! (rationals, or rational functions in a formal `q`):
//!
//! - Hecke-algebra idempotents on tensor powers (antisymmetrizers,
//!   symmetrizers, Jucys–Murphy spectral projectors),
//! - the rank frame: rank `p`, the tensors `u`, `v`, the matrices `N`, `M`
//!   and the naturality verdict,
//! - the C-matrix, quantum traces and categorical q-dimensions,
//! - an independent symmetric-function engine (Schur evaluation,
//!   Littlewood–Richardson coefficients) used to cross-validate every
//!   dimension the trace pipeline produces.
//!
//! All arithmetic is exact; every identity is checked with zero tolerance.

pub mod error;
pub mod frame;
pub mod heckealg;
pub mod qtrace;
pub mod scalar;
pub mod symfunc;
pub mod symmetry;
pub mod tensor;

pub use error::{Error, Result};
