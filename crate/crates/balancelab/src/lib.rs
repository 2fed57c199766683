//! Generators for structured infinite words (substitution fixed points,
//! level-telescoped limits, rotation codings, block-counting towers,
//! automatic sequences) and empirical analyzers for balancedness,
//! discrepancy, factor complexity, recurrence, and power-freeness over
//! long prefixes.
//!
//! Scans are data-parallel over independent (pattern, length) cells; build
//! with the default `parallel` feature for rayon-backed execution, or
//! without it for a fully sequential build. Both produce identical output.

#![forbid(unsafe_code)]

pub mod analyzers;
pub mod error;
pub mod experiments;
pub mod exec;
pub mod morphisms;
pub mod numeration;
pub mod sadic;
pub mod sources;
pub mod toeplitz;
pub mod words;

pub use error::{Error, Result};
pub use exec::ExecMode;
