//! Sliding-window balance and discrepancy scans.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{map_collect, map_range, ExecMode};
use crate::words::scan::{distinct_factors, occurrence_positions};
use crate::words::source::WordSource;
use crate::words::word::FiniteWord;

/// Per-length balance values of one pattern: the spread (max - min) of
/// occurrence counts over all windows of each length in the scanned
/// prefix. The defining supremum over window pairs equals the spread, so
/// no pair enumeration happens anywhere.
#[derive(Debug, Clone, Serialize)]
pub struct BalanceProfile {
    pub pattern: String,
    pub horizon: usize,
    /// `values[i]` is the spread at window length `i + 1`.
    pub values: Vec<u32>,
    /// Running maximum of `values`.
    pub running_max: u32,
}

impl BalanceProfile {
    pub fn value(&self, n: usize) -> u32 {
        self.values[n - 1]
    }
}

/// Occurrence-start prefix sums: `sums[i]` counts occurrences starting
/// before position `i`.
fn occurrence_prefix_sums(text: &[u32], pattern: &[u32]) -> Vec<u32> {
    let positions = occurrence_positions(text, pattern);
    let mut sums = vec![0u32; text.len() + 1];
    let mut iter = positions.iter().peekable();
    for i in 0..text.len() {
        sums[i + 1] = sums[i]
            + if iter.peek() == Some(&&i) {
                iter.next();
                1
            } else {
                0
            };
    }
    sums
}

/// Spread of window occurrence counts at one window length. A window of
/// length `n` starting at `j` holds the occurrences starting in
/// `[j, j + n - |u|]`; patterns longer than the window contribute zero.
fn spread_at(sums: &[u32], horizon: usize, pattern_len: usize, n: usize) -> u32 {
    if n < pattern_len || n > horizon {
        return 0;
    }
    let span = n - pattern_len + 1;
    let mut min = u32::MAX;
    let mut max = 0u32;
    for j in 0..=(horizon - n) {
        let count = sums[j + span] - sums[j];
        min = min.min(count);
        max = max.max(count);
    }
    max - min
}

pub fn balance_profile(
    source: &WordSource,
    pattern: &FiniteWord,
    n_max: usize,
    horizon: usize,
) -> Result<BalanceProfile> {
    balance_profile_with_mode(source, pattern, n_max, horizon, ExecMode::default())
}

pub fn balance_profile_with_mode(
    source: &WordSource,
    pattern: &FiniteWord,
    n_max: usize,
    horizon: usize,
    mode: ExecMode,
) -> Result<BalanceProfile> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    if horizon < n_max + pattern.len() {
        return Err(Error::HorizonTooSmall {
            horizon,
            reason: format!("need n_max + |pattern| = {}", n_max + pattern.len()),
        });
    }
    let prefix = source.prefix(horizon)?;
    prefix.check_same_alphabet(pattern)?;
    let profile = balance_values(prefix.symbols(), pattern.symbols(), n_max, mode);
    Ok(BalanceProfile {
        pattern: pattern.render(),
        horizon,
        running_max: profile.iter().copied().max().unwrap_or(0),
        values: profile,
    })
}

fn balance_values(text: &[u32], pattern: &[u32], n_max: usize, mode: ExecMode) -> Vec<u32> {
    let sums = occurrence_prefix_sums(text, pattern);
    map_range(mode, 1..n_max + 1, |n| spread_at(&sums, text.len(), pattern.len(), n))
}

/// Spread of occurrence counts at a single window length, without
/// materializing a whole profile. Useful for sweeps over geometric length
/// grids.
pub fn balance_at(
    source: &WordSource,
    pattern: &FiniteWord,
    n: usize,
    horizon: usize,
) -> Result<u32> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    if horizon < n {
        return Err(Error::HorizonTooSmall { horizon, reason: format!("need n = {n}") });
    }
    let prefix = source.prefix(horizon)?;
    prefix.check_same_alphabet(pattern)?;
    let sums = occurrence_prefix_sums(prefix.symbols(), pattern.symbols());
    Ok(spread_at(&sums, horizon, pattern.len(), n))
}

/// Deviation of windowed occurrence counts from the frequency drift.
///
/// At index n the scan counts occurrences *starting* in n consecutive
/// positions (a window of n + |u| - 1 symbols) and compares against the
/// drift n mu. For single letters this is exactly the count-minus-drift
/// deviation over length-n windows; counting starts keeps the
/// per-position drift aligned with the frequency normalization, so the
/// deviation of a pattern with balance constant C stays within C (plus
/// frequency error), window length by window length.
#[derive(Debug, Clone, Serialize)]
pub struct DiscrepancyProfile {
    pub pattern: String,
    pub horizon: usize,
    /// Frequency used for the drift term.
    pub mu: f64,
    /// How `mu` was obtained.
    pub mu_source: MuSource,
    /// `values[i]` is the largest |count - n mu| at n = i + 1 start
    /// positions.
    pub values: Vec<f64>,
    /// Signed extremes per length, for diagnostic plots.
    pub signed_min: Vec<f64>,
    pub signed_max: Vec<f64>,
    pub running_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MuSource {
    Supplied,
    EstimatedAtHorizon,
}

pub fn discrepancy_profile(
    source: &WordSource,
    pattern: &FiniteWord,
    mu: Option<f64>,
    n_max: usize,
    horizon: usize,
) -> Result<DiscrepancyProfile> {
    discrepancy_profile_with_mode(source, pattern, mu, n_max, horizon, ExecMode::default())
}

pub fn discrepancy_profile_with_mode(
    source: &WordSource,
    pattern: &FiniteWord,
    mu: Option<f64>,
    n_max: usize,
    horizon: usize,
    mode: ExecMode,
) -> Result<DiscrepancyProfile> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    if horizon < n_max + pattern.len() {
        return Err(Error::HorizonTooSmall {
            horizon,
            reason: format!("need n_max + |pattern| = {}", n_max + pattern.len()),
        });
    }
    let prefix = source.prefix(horizon)?;
    prefix.check_same_alphabet(pattern)?;
    let sums = occurrence_prefix_sums(prefix.symbols(), pattern.symbols());
    let (mu_value, mu_source) = match mu {
        Some(m) => (m, MuSource::Supplied),
        None => (
            sums[horizon] as f64 / horizon as f64,
            MuSource::EstimatedAtHorizon,
        ),
    };
    let rows = map_range(mode, 1..n_max + 1, |n| {
        let drift = n as f64 * mu_value;
        // Count occurrences starting in [j, j + n); the covering window is
        // n + |u| - 1 symbols long.
        let covered = n + pattern.len() - 1;
        if covered > horizon {
            return (0.0, 0.0, 0.0);
        }
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for j in 0..=(horizon - covered) {
            let value = (sums[j + n] - sums[j]) as f64 - drift;
            lo = lo.min(value);
            hi = hi.max(value);
        }
        (hi.abs().max(lo.abs()), lo, hi)
    });
    let values: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let signed_min = rows.iter().map(|r| r.1).collect();
    let signed_max = rows.iter().map(|r| r.2).collect();
    Ok(DiscrepancyProfile {
        pattern: pattern.render(),
        horizon,
        mu: mu_value,
        mu_source,
        running_max: values.iter().cloned().fold(0.0, f64::max),
        values,
        signed_min,
        signed_max,
    })
}

/// One pattern row of a whole-language sweep.
#[derive(Debug, Clone, Serialize)]
pub struct PatternBalance {
    pub pattern: String,
    pub max_value: u32,
    /// Window length at which the maximum was first attained.
    pub argmax_n: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct UniformBalanceReport {
    pub horizon: usize,
    pub n_max: usize,
    pub max_pattern_len: usize,
    pub per_pattern: Vec<PatternBalance>,
    /// Largest balance value over every scanned pattern: the observed
    /// lower bound for a uniform balance constant.
    pub global_max: u32,
    pub witnesses: Vec<String>,
    /// Set when the pattern budget cut the sweep short.
    pub truncated: bool,
}

/// Default pattern budget for whole-language sweeps.
pub const PATTERN_BUDGET: usize = 10_000;

pub fn uniform_balance_scan(
    source: &WordSource,
    max_pattern_len: usize,
    n_max: usize,
    horizon: usize,
) -> Result<UniformBalanceReport> {
    uniform_balance_scan_with_mode(
        source,
        max_pattern_len,
        n_max,
        horizon,
        PATTERN_BUDGET,
        ExecMode::default(),
    )
}

/// Sweep every factor of length up to `max_pattern_len`, reporting each
/// pattern's largest balance value over window lengths up to `n_max` and
/// the global maximum. The pattern list is truncated at `budget`, with the
/// truncation reported.
pub fn uniform_balance_scan_with_mode(
    source: &WordSource,
    max_pattern_len: usize,
    n_max: usize,
    horizon: usize,
    budget: usize,
    mode: ExecMode,
) -> Result<UniformBalanceReport> {
    if max_pattern_len == 0 {
        return Err(Error::EmptyPattern);
    }
    if horizon < n_max + max_pattern_len {
        return Err(Error::HorizonTooSmall {
            horizon,
            reason: format!("need n_max + max pattern length = {}", n_max + max_pattern_len),
        });
    }
    let prefix = source.prefix(horizon)?;
    let symbols = prefix.symbols();
    let mut patterns: Vec<FiniteWord> = Vec::new();
    let mut truncated = false;
    for len in 1..=max_pattern_len {
        for factor in distinct_factors(source.alphabet(), symbols, len) {
            if patterns.len() >= budget {
                truncated = true;
                break;
            }
            patterns.push(factor);
        }
    }

    let per_pattern = map_collect(mode, &patterns, |pattern| {
        let values = balance_values(symbols, pattern.symbols(), n_max, ExecMode::Sequential);
        let (argmax, max) = values
            .iter()
            .enumerate()
            .fold((0usize, 0u32), |(ai, am), (i, &v)| {
                if v > am {
                    (i, v)
                } else {
                    (ai, am)
                }
            });
        PatternBalance {
            pattern: pattern.render(),
            max_value: max,
            argmax_n: argmax + 1,
        }
    });
    let global_max = per_pattern.iter().map(|p| p.max_value).max().unwrap_or(0);
    let witnesses = per_pattern
        .iter()
        .filter(|p| p.max_value == global_max)
        .take(8)
        .map(|p| p.pattern.clone())
        .collect();
    Ok(UniformBalanceReport {
        horizon,
        n_max,
        max_pattern_len,
        per_pattern,
        global_max,
        witnesses,
        truncated,
    })
}
