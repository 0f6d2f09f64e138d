//! Exact computations for finite-dimensional Zinbiel algebras: identities
//! and invariants, second cohomology and central extensions, and
//! verification of degenerations through `t → 0` limits.

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod cohomology;
pub mod degeneration;
pub mod error;
pub mod exactmath;

pub use error::{Error, Result};
