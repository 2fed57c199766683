//! Semi-decision of tameness: are the blocks of bounded letters that occur
//! in iterated images a finite set?

use std::collections::HashSet;

use crate::error::Result;
use crate::morphisms::incidence::incidence;
use crate::morphisms::substitution::Substitution;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TameVerdict {
    /// The set of maximal bounded-letter runs stabilized across two
    /// successive horizons (and no bounded letter exists or none grows).
    TameCertified,
    /// Maximal bounded-letter run lengths keep growing.
    CounterGrowth,
    /// Neither stabilization nor growth observed within the horizon.
    Inconclusive,
}

#[derive(Debug, Clone)]
pub struct TameScan {
    pub verdict: TameVerdict,
    /// Maximal bounded-letter blocks collected at the final horizon.
    pub bounded_blocks: Vec<Vec<u32>>,
    pub iterations: usize,
}

/// Enumerate maximal bounded-letter blocks in iterated images up to
/// `horizon` iterations; certify tameness when the block set stabilizes
/// across two successive iterations, report growth when the longest block
/// keeps lengthening.
pub fn tame_scan(sub: &Substitution, horizon: usize) -> Result<TameScan> {
    let data = incidence(sub)?;
    if data.bounded_letters.is_empty() {
        return Ok(TameScan {
            verdict: TameVerdict::TameCertified,
            bounded_blocks: Vec::new(),
            iterations: 0,
        });
    }
    let bounded: Vec<bool> = {
        let mut v = vec![false; sub.source_alphabet().size()];
        for &a in &data.bounded_letters {
            v[a as usize] = true;
        }
        v
    };

    let cap_len = 1 << 20;
    let mut blocks: HashSet<Vec<u32>> = HashSet::new();
    let mut max_lens = Vec::new();
    let mut stable_since: Option<usize> = None;
    let mut iterations = 0;
    // Track blocks across images of all letters simultaneously.
    let mut words: Vec<Vec<u32>> =
        (0..sub.source_alphabet().size() as u32).map(|a| vec![a]).collect();
    for it in 1..=horizon {
        iterations = it;
        words = words
            .iter()
            .map(|w| {
                let mut im = sub.apply_raw(w);
                im.truncate(cap_len);
                im
            })
            .collect();
        let before = blocks.len();
        let mut max_len = 0;
        for w in &words {
            let mut start = None;
            for (i, &a) in w.iter().enumerate() {
                if bounded[a as usize] {
                    start.get_or_insert(i);
                } else if let Some(s) = start.take() {
                    max_len = max_len.max(i - s);
                    blocks.insert(w[s..i].to_vec());
                }
            }
            if let Some(s) = start {
                max_len = max_len.max(w.len() - s);
                blocks.insert(w[s..].to_vec());
            }
        }
        max_lens.push(max_len);
        if blocks.len() == before && it > 1 {
            if stable_since.is_none() {
                stable_since = Some(it);
            }
        } else {
            stable_since = None;
        }
        // Two successive stable horizons certify tameness.
        if stable_since.map_or(false, |s| it >= s + 1) {
            return Ok(TameScan {
                verdict: TameVerdict::TameCertified,
                bounded_blocks: blocks.into_iter().collect(),
                iterations: it,
            });
        }
        // Strictly growing run lengths over the last few iterations.
        if max_lens.len() >= 4 && max_lens[it - 4..].windows(2).all(|w| w[0] < w[1]) {
            return Ok(TameScan {
                verdict: TameVerdict::CounterGrowth,
                bounded_blocks: blocks.into_iter().collect(),
                iterations: it,
            });
        }
    }
    Ok(TameScan {
        verdict: TameVerdict::Inconclusive,
        bounded_blocks: blocks.into_iter().collect(),
        iterations,
    })
}
