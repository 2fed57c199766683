//! Occurrence counting and factor enumeration on symbol slices.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::words::alphabet::Alphabet;
use crate::words::word::FiniteWord;

/// Number of (possibly overlapping) occurrences of `pattern` in `text`.
pub fn count_occurrences(text: &FiniteWord, pattern: &FiniteWord) -> Result<usize> {
    text.check_same_alphabet(pattern)?;
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    Ok(count_occurrences_raw(text.symbols(), pattern.symbols()))
}

pub(crate) fn count_occurrences_raw(text: &[u32], pattern: &[u32]) -> usize {
    occurrence_positions(text, pattern).len()
}

/// Start positions of all occurrences of `pattern` in `text`, overlaps
/// included.
pub(crate) fn occurrence_positions(text: &[u32], pattern: &[u32]) -> Vec<usize> {
    let m = pattern.len();
    if m == 0 || m > text.len() {
        return Vec::new();
    }
    let mut positions = Vec::new();
    let first = pattern[0];
    for i in 0..=(text.len() - m) {
        if text[i] == first && &text[i..i + m] == pattern {
            positions.push(i);
        }
    }
    positions
}

const FINGERPRINT_BASE: u64 = 0x9e37_79b9_7f4a_7c15;

fn window_fingerprint(window: &[u32]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &s in window {
        h = h
            .wrapping_add(s as u64 + 1)
            .wrapping_mul(FINGERPRINT_BASE)
            .rotate_left(17);
    }
    h
}

/// Dedup of all length-`n` windows of `text` via fingerprints, verifying
/// actual symbols on every bucket hit so hash collisions cannot merge
/// distinct factors. Returns the start position of the first occurrence of
/// each distinct factor, in order of first appearance.
pub(crate) fn distinct_window_starts(text: &[u32], n: usize) -> Vec<usize> {
    let mut buckets: HashMap<u64, Vec<usize>> = HashMap::new();
    let mut firsts = Vec::new();
    if n == 0 || n > text.len() {
        return firsts;
    }
    for i in 0..=(text.len() - n) {
        let w = &text[i..i + n];
        let fp = window_fingerprint(w);
        let bucket = buckets.entry(fp).or_default();
        if !bucket.iter().any(|&j| &text[j..j + n] == w) {
            bucket.push(i);
            firsts.push(i);
        }
    }
    firsts
}

/// Assign each window start its factor id (ids in order of first
/// appearance). Returns (ids per position, number of distinct factors).
pub(crate) fn factor_ids(text: &[u32], n: usize) -> (Vec<u32>, usize) {
    let mut buckets: HashMap<u64, Vec<(usize, u32)>> = HashMap::new();
    let mut next_id = 0u32;
    if n == 0 || n > text.len() {
        return (Vec::new(), 0);
    }
    let mut ids = Vec::with_capacity(text.len() - n + 1);
    for i in 0..=(text.len() - n) {
        let w = &text[i..i + n];
        let fp = window_fingerprint(w);
        let bucket = buckets.entry(fp).or_default();
        let id = match bucket.iter().find(|&&(j, _)| &text[j..j + n] == w) {
            Some(&(_, id)) => id,
            None => {
                let id = next_id;
                next_id += 1;
                bucket.push((i, id));
                id
            }
        };
        ids.push(id);
    }
    (ids, next_id as usize)
}

/// All distinct length-`n` factors of `prefix`, in order of first appearance.
pub(crate) fn distinct_factors(
    alphabet: &Arc<Alphabet>,
    prefix: &[u32],
    n: usize,
) -> Vec<FiniteWord> {
    distinct_window_starts(prefix, n)
        .into_iter()
        .map(|i| FiniteWord::from_raw(alphabet.clone(), prefix[i..i + n].to_vec()))
        .collect()
}
