//! Positional numeration systems and automaton-generated words.

pub mod appendix;
pub mod dfao;
pub mod system;

pub use appendix::{
    appendix_b_dfao, appendix_b_suite, marker_substitution, recurrence_constant_limit,
    recurrence_constant_series, state_substitution, tribonacci_recurrence_predict,
    AppendixBReport, RatioPoint,
};
pub use dfao::{dfao_from_substitution, Dfao, DfaoFile};
pub use system::{AuxiliarySequences, NumerationSystem};

use crate::error::Result;
use crate::words::source::WordSource;

/// The automatic word of a DFAO under a numeration system: position n
/// outputs the state reached on the representation of n (position 0 reads
/// the empty representation).
pub fn dfao_word(automaton: Dfao, numeration: NumerationSystem) -> Result<WordSource> {
    WordSource::dfao(automaton, numeration)
}

#[cfg(test)]
mod tests;
