//! Empirical pattern frequencies with convergence diagnostics.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::scan::occurrence_positions;
use crate::words::source::WordSource;
use crate::words::word::FiniteWord;

#[derive(Debug, Clone, Serialize)]
pub struct FrequencyEstimate {
    pub pattern: String,
    pub horizon: usize,
    /// Occurrences in the full prefix divided by its length.
    pub estimate: f64,
    /// (prefix length, count / length) at geometric checkpoints.
    pub convergence: Vec<(usize, f64)>,
    /// Extremes of the windowed density at the largest checkpoint window,
    /// a uniform-frequency diagnostic.
    pub window_min: f64,
    pub window_max: f64,
    /// The pattern never occurred in the prefix.
    pub absent: bool,
}

/// Estimate the frequency of `pattern` from prefix counts at geometric
/// checkpoints, with a windowed min/max diagnostic for uniformity.
pub fn frequency_estimate(
    source: &WordSource,
    pattern: &FiniteWord,
    horizon: usize,
) -> Result<FrequencyEstimate> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    if horizon < 10 * pattern.len() {
        return Err(Error::HorizonTooSmall {
            horizon,
            reason: format!("need at least 10 * |pattern| = {}", 10 * pattern.len()),
        });
    }
    let prefix = source.prefix(horizon)?;
    prefix.check_same_alphabet(pattern)?;
    let positions = occurrence_positions(prefix.symbols(), pattern.symbols());

    // Geometric checkpoints horizon / 2^k down to a floor.
    let mut checkpoints = Vec::new();
    let mut at = horizon;
    while at >= 16.max(4 * pattern.len()) {
        checkpoints.push(at);
        at /= 2;
    }
    checkpoints.reverse();
    let convergence: Vec<(usize, f64)> = checkpoints
        .iter()
        .map(|&n| {
            let count = positions.partition_point(|&p| p + pattern.len() <= n);
            (n, count as f64 / n as f64)
        })
        .collect();

    // Windowed density at the half-horizon window length over all offsets.
    let window = (horizon / 2).max(pattern.len());
    let mut prefix_counts = vec![0u32; prefix.len() + 1];
    {
        let mut pos_iter = positions.iter().peekable();
        for i in 0..prefix.len() {
            prefix_counts[i + 1] = prefix_counts[i]
                + if pos_iter.peek() == Some(&&i) {
                    pos_iter.next();
                    1
                } else {
                    0
                };
        }
    }
    let mut window_min = f64::INFINITY;
    let mut window_max = f64::NEG_INFINITY;
    if window <= prefix.len() {
        let span = window - pattern.len() + 1;
        for start in 0..=(prefix.len() - window) {
            let count = prefix_counts[start + span] - prefix_counts[start];
            let density = count as f64 / window as f64;
            window_min = window_min.min(density);
            window_max = window_max.max(density);
        }
    }

    Ok(FrequencyEstimate {
        pattern: pattern.render(),
        horizon,
        estimate: positions.len() as f64 / horizon as f64,
        convergence,
        window_min,
        window_max,
        absent: positions.is_empty(),
    })
}
