//! Empirical balance, discrepancy, and frequency analysis of word
//! prefixes.
//!
//! All quantities here are finite-horizon observations: maxima over the
//! windows of a scanned prefix. They lower-bound the corresponding
//! suprema of the underlying infinite word; increasing the horizon never
//! decreases a reported value. Every report carries its horizon.

pub mod balance;
pub mod consistency;
pub mod frequency;
pub mod report;

pub use balance::{
    balance_at, balance_profile, balance_profile_with_mode, discrepancy_profile,
    discrepancy_profile_with_mode, uniform_balance_scan, uniform_balance_scan_with_mode,
    BalanceProfile, DiscrepancyProfile, UniformBalanceReport,
};
pub use consistency::{balance_discrepancy_consistency, ConsistencyReport};
pub use frequency::{frequency_estimate, FrequencyEstimate};
