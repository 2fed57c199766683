//! Prefix-based factor-complexity and recurrence reports.
//!
//! Both analyzers scan a finite prefix, so they can only certify one
//! direction of the corresponding infinite-word quantities. Every report
//! carries its horizon and an exactness/confidence flag; exactness requires
//! a caller-provided recurrence certificate.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{map_range, ExecMode};
use crate::words::scan::{distinct_window_starts, factor_ids};
use crate::words::source::WordSource;

/// A trusted bound `n -> R(n)` certifying that every window of that length
/// contains all length-`n` factors.
pub struct RecurrenceCertificate {
    pub bound: Box<dyn Fn(usize) -> usize + Send + Sync>,
}

impl RecurrenceCertificate {
    pub fn new<F: Fn(usize) -> usize + Send + Sync + 'static>(f: F) -> Self {
        RecurrenceCertificate { bound: Box::new(f) }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ComplexityProfile {
    pub horizon: usize,
    /// `counts[i]` is the number of distinct factors of length `i + 1`.
    pub counts: Vec<usize>,
    /// Per-length exactness: true when a recurrence certificate guarantees
    /// the prefix exposes every factor of that length.
    pub exact: Vec<bool>,
    /// `ln p(n) / n`, the finite-horizon entropy series.
    pub entropy_series: Vec<f64>,
}

impl ComplexityProfile {
    pub fn count(&self, n: usize) -> usize {
        self.counts[n - 1]
    }
}

/// Count distinct length-`n` factors of the scanned prefix for every
/// `n = 1..=n_max`. The counts are lower bounds for the factor complexity,
/// exact whenever `horizon >= R(n) + n`.
pub fn complexity_profile(
    source: &WordSource,
    n_max: usize,
    horizon: usize,
    certificate: Option<&RecurrenceCertificate>,
) -> Result<ComplexityProfile> {
    complexity_profile_with_mode(source, n_max, horizon, certificate, ExecMode::default())
}

pub fn complexity_profile_with_mode(
    source: &WordSource,
    n_max: usize,
    horizon: usize,
    certificate: Option<&RecurrenceCertificate>,
    mode: ExecMode,
) -> Result<ComplexityProfile> {
    if n_max == 0 {
        return Err(Error::Invalid("n_max must be positive".into()));
    }
    if horizon < n_max {
        return Err(Error::HorizonTooSmall {
            horizon,
            reason: format!("need at least n_max = {n_max}"),
        });
    }
    let prefix = source.prefix(horizon)?;
    let symbols = prefix.symbols();
    let counts = map_range(mode, 1..n_max + 1, |n| distinct_window_starts(symbols, n).len());
    let exact = (1..=n_max)
        .map(|n| {
            certificate
                .map(|c| (c.bound)(n).saturating_add(n) <= horizon)
                .unwrap_or(false)
        })
        .collect();
    let entropy_series = counts
        .iter()
        .zip(1usize..)
        .map(|(&p, n)| (p as f64).ln() / n as f64)
        .collect();
    Ok(ComplexityProfile { horizon, counts, exact, entropy_series })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Confidence {
    /// Backed by a caller-provided recurrence certificate with a wide margin.
    Exact,
    /// Finite-horizon estimate only.
    LowerBound,
}

#[derive(Debug, Clone, Serialize)]
pub struct RecurrenceProfile {
    pub horizon: usize,
    /// `values[i]`, for length `i + 1`, is the smallest window length `z`
    /// such that every length-`z` window of the scanned prefix contains
    /// every length-`(i+1)` factor seen in the prefix. `None` marks the
    /// inconclusive case where only the whole prefix qualifies.
    pub values: Vec<Option<usize>>,
    pub confidence: Vec<Confidence>,
}

impl RecurrenceProfile {
    pub fn value(&self, n: usize) -> Option<usize> {
        self.values[n - 1]
    }
}

/// Empirical recurrence function of the scanned prefix.
///
/// The caller should supply a horizon well beyond the expected `R(n_max)`;
/// a ratio of at least 20 is recommended. Windows are windows of the prefix,
/// so a factor that stops occurring forces the marker value `None`.
pub fn recurrence_profile(
    source: &WordSource,
    n_max: usize,
    horizon: usize,
    certificate: Option<&RecurrenceCertificate>,
) -> Result<RecurrenceProfile> {
    recurrence_profile_with_mode(source, n_max, horizon, certificate, ExecMode::default())
}

pub fn recurrence_profile_with_mode(
    source: &WordSource,
    n_max: usize,
    horizon: usize,
    certificate: Option<&RecurrenceCertificate>,
    mode: ExecMode,
) -> Result<RecurrenceProfile> {
    if n_max == 0 {
        return Err(Error::Invalid("n_max must be positive".into()));
    }
    if horizon < 2 * n_max {
        return Err(Error::HorizonTooSmall {
            horizon,
            reason: format!("need at least 2 * n_max = {}", 2 * n_max),
        });
    }
    let prefix = source.prefix(horizon)?;
    let symbols = prefix.symbols();
    let values = map_range(mode, 1..n_max + 1, |n| window_for_all_factors(symbols, n));
    let confidence = (1..=n_max)
        .map(|n| match certificate {
            Some(c) if horizon >= 20usize.saturating_mul((c.bound)(n)) => Confidence::Exact,
            _ => Confidence::LowerBound,
        })
        .collect();
    Ok(RecurrenceProfile { horizon, values, confidence })
}

/// Smallest `z` such that every length-`z` window of `text` contains every
/// distinct length-`n` factor of `text`; `None` when only `z = len(text)`
/// works (inconclusive at this horizon).
fn window_for_all_factors(text: &[u32], n: usize) -> Option<usize> {
    let horizon = text.len();
    let (ids, distinct) = factor_ids(text, n);
    if distinct == 0 {
        return None;
    }
    let positions = ids.len(); // horizon - n + 1 window starts
    // need[j] = minimal window length so that the window starting at j
    // contains all factors; u64::MAX when some factor never occurs at >= j.
    let mut next_occurrence = vec![u64::MAX; distinct];
    let mut need = vec![u64::MAX; positions];
    for j in (0..positions).rev() {
        next_occurrence[ids[j] as usize] = j as u64;
        let far = *next_occurrence.iter().max().expect("nonempty");
        need[j] = if far == u64::MAX { u64::MAX } else { far - j as u64 + n as u64 };
    }
    // prefix maxima of `need`
    let mut running = 0u64;
    let prefix_max: Vec<u64> = need
        .iter()
        .map(|&v| {
            running = running.max(v);
            running
        })
        .collect();
    for z in n..horizon {
        let last_start = horizon - z; // window starts 0..=last_start
        let constraint = if last_start == 0 {
            need[0]
        } else {
            prefix_max[last_start.min(positions - 1)]
        };
        if constraint <= z as u64 {
            return Some(z);
        }
    }
    None
}
