//! Finite words, lazy word sources, and combinatorial scanning primitives.

pub mod alphabet;
pub mod io;
pub mod powers;
pub mod profiles;
pub mod scan;
pub mod source;
pub mod word;


use std::collections::BTreeSet;

use crate::error::{Error, Result};

pub use alphabet::Alphabet;
pub use powers::{is_primitive_word, max_exponent, max_power, max_power_with_mode, PowerWitness};
pub use profiles::{
    complexity_profile, complexity_profile_with_mode, recurrence_profile,
    recurrence_profile_with_mode, ComplexityProfile, Confidence, RecurrenceCertificate,
    RecurrenceProfile,
};
pub use scan::count_occurrences;
pub use source::WordSource;
pub use word::FiniteWord;

/// All distinct length-`n` factors of the scanned prefix. A subset of the
/// factor set of the underlying word, equal to it once the horizon covers
/// the recurrence window for length `n`.
pub fn factor_set(source: &WordSource, n: usize, horizon: usize) -> Result<Vec<FiniteWord>> {
    if n == 0 {
        return Err(Error::EmptyPattern);
    }
    if horizon < n {
        return Err(Error::HorizonTooSmall { horizon, reason: format!("need at least n = {n}") });
    }
    let prefix = source.prefix(horizon)?;
    Ok(scan::distinct_factors(source.alphabet(), prefix.symbols(), n))
}

/// All distinct factors of length 1..=`max_len`, in order of first
/// appearance within each length.
pub fn factors_up_to(
    source: &WordSource,
    max_len: usize,
    horizon: usize,
) -> Result<Vec<FiniteWord>> {
    let prefix = source.prefix(horizon)?;
    let mut out = Vec::new();
    for n in 1..=max_len {
        out.extend(scan::distinct_factors(source.alphabet(), prefix.symbols(), n));
    }
    Ok(out)
}

/// Return words to `pattern` in the scanned prefix: the blocks between
/// consecutive occurrences, deduplicated and sorted by length then
/// content.
pub fn return_words(
    source: &WordSource,
    pattern: &FiniteWord,
    horizon: usize,
) -> Result<Vec<FiniteWord>> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let prefix = source.prefix(horizon)?;
    prefix.check_same_alphabet(pattern)?;
    let positions = scan::occurrence_positions(prefix.symbols(), pattern.symbols());
    if positions.len() < 2 {
        return Err(Error::InsufficientOccurrences);
    }
    let mut returns = BTreeSet::new();
    for pair in positions.windows(2) {
        returns.insert(SortableWord(prefix.slice(pair[0], pair[1])));
    }
    Ok(returns.into_iter().map(|w| w.0).collect())
}

/// Ordering wrapper so factor sets can live in ordered collections.
#[derive(PartialEq, Eq)]
struct SortableWord(FiniteWord);

impl Ord for SortableWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.symbols().cmp(other.0.symbols()))
    }
}

impl PartialOrd for SortableWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
