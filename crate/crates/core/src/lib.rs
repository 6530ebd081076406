//! Exact matroid computations for basis-correlation bounds.
//!
//! The crate is organised bottom-up:
//!
//! - [`arith`] and [`linalg`]: arbitrary-precision counts and rationals, and exact
//!   rank over GF(p) and the rationals.
//! - [`subset`] and [`matroid`]: a rank-oracle matroid value over several
//!   representations, plus derived matroids (dual, minors, truncation, free
//!   extension, parallel copies, direct sums).
//! - [`enumerate`]: deterministic, parallel basis and independent-set enumeration,
//!   pair-partition counts and weighted sums.
//! - [`constructions`]: every named matroid (simplicial, graphic, transversal,
//!   Steiner paving, `S8`, the spike and transversal families).
//! - [`correlation`], [`certificates`], [`analytics`]: the correlation-ratio checks,
//!   the 3×3 / 2×2 signature certificates, Mason's inequalities and entropy bounds.

pub mod analytics;
pub mod arith;
pub mod certificates;
pub mod constructions;
pub mod correlation;
pub mod enumerate;
pub mod error;
pub mod linalg;
pub mod matroid;
pub mod subset;

pub use arith::{BigCount, BigRational};
pub use error::{Error, Result};
pub use matroid::{Derivation, ElementId, ElementStatus, Matroid};
pub use subset::SubsetMask;
