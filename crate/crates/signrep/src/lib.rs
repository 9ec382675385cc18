//! Exact tools for polynomial sign representations of Boolean functions over
//! integer grids.
//!
//! Everything here runs in arbitrary-precision rational arithmetic: sign
//! decisions are exact, never rounded. The crate provides
//!
//! - sparse multivariate polynomials with evaluation, complexity measures and
//!   reduction modulo the vanishing ideal of a finite grid ([`poly`]),
//! - Descartes'-rule utilities and generalized Vandermonde matrices with
//!   exact determinants and inverse sign patterns ([`signs`], [`vandermonde`]),
//! - verification of exact / sign / weak-sign representations of parity,
//!   inner product and explicit truth tables, plus the classical closed-form
//!   constructions ([`verify`], [`construct`]),
//! - an exact phase-1 simplex that decides representability of a monomial
//!   support and returns either coefficients or a Farkas infeasibility ray
//!   ([`lp`], [`feasibility`]), with exhaustive minimum-sparsity and
//!   minimum-degree searches on top ([`search`]),
//! - threshold-of-AND circuits: the 3^n AND-gate basis, exact minimum circuit
//!   size by subset feasibility, and explicit circuit builders ([`circuits`]),
//! - named experiment presets that reproduce the small-case bounds end to end
//!   ([`preset`]).

pub mod circuits;
pub mod construct;
mod error;
pub mod feasibility;
pub mod format;
pub mod grid;
pub mod lp;
pub mod poly;
pub mod preset;
pub mod rational;
pub mod search;
pub mod signs;
pub mod target;
pub mod vandermonde;
pub mod verify;

pub use error::{Error, Result};
pub use grid::Grid;
pub use poly::{ExponentVector, SparsePoly};
pub use rational::Rational;
pub use target::{TargetFunction, TargetKind};
pub use verify::{RepKind, VerificationReport};
