//! Substitutions, their structural data, block codes, and fixed-point
//! machinery.

pub mod block;
pub mod incidence;
pub mod io;
pub mod substitution;
pub mod tame;
pub mod transient;

pub use block::{sliding_block_presentation, BlockCode, SlidingBlockPresentation};
pub use incidence::{incidence, IncidenceData, QuasiUniformity};
pub use substitution::Substitution;
pub use tame::{tame_scan, TameScan, TameVerdict};
pub use transient::{transient_decomposition, TransientDecomposition};

use crate::error::Result;
use crate::words::source::WordSource;

/// Lazily coded image of a source under a block code; a length-n prefix of
/// the image draws on a length-(n + k - 1) prefix of the input.
pub fn block_code_apply(code: BlockCode, source: WordSource) -> Result<WordSource> {
    WordSource::block_code_image(code, source)
}

#[cfg(test)]
mod tests;
