//! Reasoning over Dung-style abstract argumentation frameworks by dynamic
//! programming on normalized tree decompositions.
//!
//! The pipeline is: build an [`ArgumentationFramework`], take its
//! [`PrimalGraph`], compute an elimination ordering with one of the
//! [`Heuristic`]s, turn it into a [`TreeDecomposition`], [`normalize`] it and
//! run the table-based algorithms in [`dp`]. The [`oracle`] module contains an
//! exhaustive reference implementation used to cross-check the DP.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod af;
mod coloring;
mod decomposition;
pub mod dp;
mod error;
mod graph;
mod heuristic;
mod normalize;
pub mod oracle;

pub use af::{ArgumentationFramework, Extension};
pub use coloring::{Color, Coloring, MAX_BAG};
pub use decomposition::{decompose, TreeDecomposition, Violation};
pub use dp::Semantics;
pub use error::Error;
pub use graph::PrimalGraph;
pub use heuristic::{elimination_order, Heuristic};
pub use normalize::{normalize, validate_normalized, NodeKind, NormalizedDecomposition, NormalizedNode};

/// Convenience alias used throughout the crate.
pub type Result<T, E = Error> = core::result::Result<T, E>;
