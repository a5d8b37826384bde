//! File formats, benchmark harness and command line for `argtd-core`.

pub mod aspartix;
pub mod bench;
pub mod cli;

pub use aspartix::{parse_aspartix, serialize_aspartix, DiagnosticKind, ParseDiagnostic};
