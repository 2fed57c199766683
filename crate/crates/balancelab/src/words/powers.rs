//! Primitivity and repetition scanning.

use crate::error::{Error, Result};
use crate::exec::{map_range, ExecMode};
use crate::words::scan::count_occurrences_raw;
use crate::words::word::FiniteWord;

/// A word is primitive iff it is not a power of a strictly shorter word,
/// equivalently iff `uu` contains exactly two occurrences of `u`.
pub fn is_primitive_word(word: &FiniteWord) -> Result<bool> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    let doubled = [word.symbols(), word.symbols()].concat();
    let by_overlap = count_occurrences_raw(&doubled, word.symbols()) == 2;
    // Cross-validate against the divisor-period test: u = v^k for k >= 2.
    let by_divisors = !(1..word.len())
        .filter(|d| word.len() % d == 0)
        .any(|d| word.symbols().chunks(d).all(|c| c == &word.symbols()[..d]));
    debug_assert_eq!(by_overlap, by_divisors);
    Ok(by_overlap && by_divisors)
}

/// A maximal integer repetition found in a prefix: `base^exponent` occurs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerWitness {
    pub base: FiniteWord,
    pub exponent: usize,
    pub position: usize,
}

/// Largest exponent `k <= p_max` such that some nonempty `v^k` occurs in
/// `prefix`, with a witness. Returns `None` when the prefix is square-free.
///
/// Scans every period `l = 1..=len/2` and extends equality runs greedily; a
/// run of `m` matching positions at period `l` yields exponent
/// `(m + l) / l`.
pub fn max_power(prefix: &FiniteWord, p_max: usize) -> Result<Option<PowerWitness>> {
    max_power_with_mode(prefix, p_max, ExecMode::default())
}

pub fn max_power_with_mode(
    prefix: &FiniteWord,
    p_max: usize,
    mode: ExecMode,
) -> Result<Option<PowerWitness>> {
    if p_max < 2 {
        return Err(Error::Invalid("p_max must be at least 2".into()));
    }
    let s = prefix.symbols();
    let len = s.len();
    if len < 2 {
        return Ok(None);
    }
    // best candidate per period: (exponent, period, start)
    let per_period = map_range(mode, 1..len / 2 + 1, |period| {
        let mut best: Option<(usize, usize)> = None; // (exponent, start)
        // run[i] would be 1 + run[i+1] when s[i] == s[i+period]; fold inline.
        let mut run = 0usize;
        for i in (0..len - period).rev() {
            if s[i] == s[i + period] {
                run += 1;
            } else {
                run = 0;
            }
            let exponent = (run + period) / period;
            if exponent >= 2 && best.map_or(true, |(e, _)| exponent > e) {
                best = Some((exponent, i));
            }
        }
        best.map(|(e, start)| (e, period, start))
    });
    let mut best: Option<(usize, usize, usize)> = None;
    for cand in per_period.into_iter().flatten() {
        let better = match best {
            None => true,
            // Prefer higher exponents; break ties toward shorter bases.
            Some((e, p, _)) => cand.0 > e || (cand.0 == e && cand.1 < p),
        };
        if better {
            best = Some(cand);
        }
    }
    Ok(best.map(|(exponent, period, start)| {
        let exponent = exponent.min(p_max);
        PowerWitness {
            base: prefix.slice(start, start + period),
            exponent,
            position: start,
        }
    }))
}

/// Largest exponent found, or 1 for square-free prefixes. Convenience for
/// power-freeness checks: `prefix` is `(k+1)`-power-free where `k` is the
/// returned value.
pub fn max_exponent(prefix: &FiniteWord, p_max: usize, mode: ExecMode) -> Result<usize> {
    Ok(max_power_with_mode(prefix, p_max, mode)?.map_or(1, |w| w.exponent))
}

/// Largest fractional repetition exponent over periods up to `max_period`:
/// a run of `m` matching positions at period `l` is a repetition of length
/// `m + l` and exponent `(m + l) / l`. Finer-grained than the integer
/// scan, so growth across horizons resolves even when the integer
/// exponent is stuck between levels.
pub fn max_fractional_exponent(
    prefix: &FiniteWord,
    max_period: usize,
    mode: ExecMode,
) -> f64 {
    let s = prefix.symbols();
    let len = s.len();
    if len < 2 {
        return 1.0;
    }
    let top = max_period.min(len / 2).max(1);
    let per_period = map_range(mode, 1..top + 1, |period| {
        let mut best = 0usize;
        let mut run = 0usize;
        for i in (0..len - period).rev() {
            if s[i] == s[i + period] {
                run += 1;
                best = best.max(run);
            } else {
                run = 0;
            }
        }
        (best + period) as f64 / period as f64
    });
    per_period.into_iter().fold(1.0, f64::max)
}
