//! Limit words of constant-length substitution towers, the doubling-block
//! instance, and the positive-entropy block-counting family.

pub mod multinomial;
pub mod spec;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::morphisms::substitution::Substitution;
use crate::words::scan::distinct_window_starts;
use crate::words::word::FiniteWord;

pub use multinomial::{arrangement_count, multinomial, stirling_log_estimate, unrank_arrangement};
pub use spec::{validate_spec, ExpLevelStats, LevelCheck, SizeInfo, ToeplitzSpec, ToeplitzValidation};

/// Length-`len` prefix of the limit word of a tower.
pub fn toeplitz_prefix(spec: &ToeplitzSpec, len: usize) -> Result<FiniteWord> {
    spec.prefix(len)
}

/// The doubling tower and the fixed point of 0 -> 01, 1 -> 00 agree on
/// `len` symbols.
pub fn pd_equivalence_check(len: usize) -> Result<bool> {
    let tower = ToeplitzSpec::period_doubling().prefix(len)?;
    let sub = Substitution::endomorphism("01", &[("0", "01"), ("1", "00")])?;
    let fixed = sub.fixed_point_prefix(0, len)?;
    Ok(tower.symbols() == fixed.symbols())
}

/// Build the block-counting spec with the default enumeration cap and a
/// deterministic sampling seed.
pub fn exp_spec(l0: u64, ks: Vec<u64>, rng_seed: u64) -> Result<ToeplitzSpec> {
    ToeplitzSpec::exp(l0, ks, spec::ENUMERATION_CAP, rng_seed)
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthRow {
    pub level: usize,
    /// Window length inspected: the period of this level.
    pub period: u64,
    /// Distinct factors of that length in the scanned prefix.
    pub distinct_factors: usize,
    /// Alphabet size of this level (the predicted lower bound), when
    /// exactly known.
    pub lower_bound: Option<u64>,
    pub bound_met: Option<bool>,
    /// ln(distinct) / period, the finite-horizon entropy estimate.
    pub log_complexity_rate: f64,
}

/// Count distinct period-length factors of the limit word per level and
/// compare against the level alphabet sizes.
pub fn complexity_growth_check(
    spec: &ToeplitzSpec,
    depth: usize,
    horizon: usize,
) -> Result<Vec<GrowthRow>> {
    let mut rows = Vec::new();
    let max_level = spec.defined_levels().unwrap_or(depth + 1).min(depth + 1);
    // Clamp the scan to the longest materializable prefix of a bounded
    // tower.
    let horizon = match spec.defined_levels() {
        Some(levels) => match spec.period(levels) {
            Ok(covered) => horizon.min(covered as usize),
            Err(_) => horizon,
        },
        None => horizon,
    };
    let prefix = spec.prefix(horizon)?;
    for n in 1..max_level {
        let period = spec.period(n)?;
        if period as usize > horizon / 2 {
            break;
        }
        let distinct = distinct_window_starts(prefix.symbols(), period as usize).len();
        let lower_bound = match spec.alphabet_size(n)? {
            SizeInfo::Exact(c) => c.to_u64(),
            SizeInfo::LogOnly(_) => None,
        };
        let bound_met = lower_bound.map(|l| distinct as u64 >= l);
        rows.push(GrowthRow {
            level: n,
            period,
            distinct_factors: distinct,
            lower_bound,
            bound_met,
            log_complexity_rate: (distinct.max(1) as f64).ln() / period as f64,
        });
    }
    if rows.is_empty() {
        return Err(Error::HorizonTooSmall {
            horizon,
            reason: "no level period fits in half the horizon".into(),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests;
