//! Level-structured word constructions and their balance machinery.

pub mod arnoux_rauzy;
pub mod bound;
pub mod congenial;
pub mod decisive;
pub mod sturmian;

pub use arnoux_rauzy::{
    ar_congenial, ar_substitution, partial_quotients, DirectiveSequence, PartialQuotients,
};
pub use bound::{
    theoretical_balance_bound, tribonacci_linear_recurrence_constant, tribonacci_root,
};
pub use congenial::{CongenialSequence, Level};
pub use decisive::{
    decisiveness_certificate, frequency_from_level, pattern_counts, seam_identity_check,
    DecisivenessCertificate,
};
pub use sturmian::{
    rotation_word_for_slope, sturmian_rotation, sturmian_sadic, ContinuedFraction,
    IntervalVariant,
};

#[cfg(test)]
mod tests;
