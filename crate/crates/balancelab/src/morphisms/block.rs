//! Higher block codes: letterwise recodings of sliding length-k windows.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::morphisms::substitution::Substitution;
use crate::words::alphabet::{same_alphabet, Alphabet};
use crate::words::scan::distinct_window_starts;
use crate::words::word::FiniteWord;

/// A map from length-k windows over the source alphabet to letters of the
/// target alphabet. Partial: defined on the declared factor set only.
#[derive(Debug, Clone)]
pub struct BlockCode {
    k: usize,
    source: Arc<Alphabet>,
    target: Arc<Alphabet>,
    map: HashMap<Vec<u32>, u32>,
}

impl BlockCode {
    pub fn new(
        k: usize,
        source: Arc<Alphabet>,
        target: Arc<Alphabet>,
        entries: Vec<(FiniteWord, u32)>,
    ) -> Result<Self> {
        if k == 0 {
            return Err(Error::Invalid("window length must be positive".into()));
        }
        let mut map = HashMap::new();
        for (window, letter) in entries {
            if !same_alphabet(window.alphabet(), &source) {
                return Err(Error::AlphabetMismatch(format!(
                    "window '{window}' not over the source alphabet"
                )));
            }
            if window.len() != k {
                return Err(Error::Invalid(format!(
                    "window '{window}' has length {}, expected {k}",
                    window.len()
                )));
            }
            if letter as usize >= target.size() {
                return Err(Error::OutOfRange(format!("target letter {letter}")));
            }
            map.insert(window.symbols().to_vec(), letter);
        }
        Ok(BlockCode { k, source, target, map })
    }

    /// The identity 1-block code.
    pub fn identity(alphabet: Arc<Alphabet>) -> Self {
        let map = (0..alphabet.size() as u32).map(|a| (vec![a], a)).collect();
        BlockCode { k: 1, source: alphabet.clone(), target: alphabet, map }
    }

    /// Binary sum code of width `k`: a window maps to the sum of its
    /// symbols modulo the target size.
    pub fn mod_sum(k: usize, alphabet: Arc<Alphabet>) -> Result<Self> {
        let size = alphabet.size() as u32;
        let mut entries = Vec::new();
        let mut window = vec![0u32; k];
        loop {
            let sum = window.iter().sum::<u32>() % size;
            entries.push((FiniteWord::from_raw(alphabet.clone(), window.clone()), sum));
            let mut i = k;
            loop {
                if i == 0 {
                    return BlockCode::new(k, alphabet.clone(), alphabet.clone(), entries);
                }
                i -= 1;
                window[i] += 1;
                if window[i] < size {
                    break;
                }
                window[i] = 0;
            }
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn source_alphabet(&self) -> &Arc<Alphabet> {
        &self.source
    }

    pub fn target_alphabet(&self) -> &Arc<Alphabet> {
        &self.target
    }

    pub fn lookup(&self, window: &[u32]) -> Option<u32> {
        self.map.get(window).copied()
    }

    /// Code a word of length `l + k - 1` into a word of length `l`, sliding
    /// the window one position at a time.
    pub fn apply(&self, word: &FiniteWord) -> Result<FiniteWord> {
        if !same_alphabet(word.alphabet(), &self.source) {
            return Err(Error::AlphabetMismatch("block code source".into()));
        }
        self.apply_raw(word.symbols())
            .map(|symbols| FiniteWord::from_raw(self.target.clone(), symbols))
    }

    pub(crate) fn apply_raw(&self, symbols: &[u32]) -> Result<Vec<u32>> {
        if symbols.len() < self.k {
            return Ok(Vec::new());
        }
        let mut out = Vec::with_capacity(symbols.len() - self.k + 1);
        for window in symbols.windows(self.k) {
            match self.map.get(window) {
                Some(&letter) => out.push(letter),
                None => {
                    let w = FiniteWord::from_raw(self.source.clone(), window.to_vec());
                    return Err(Error::UndefinedWindow(w.render()));
                }
            }
        }
        Ok(out)
    }
}

/// The sliding-block presentation of a substitution on the length-k factors
/// of its fixed point: a substitution over one letter per factor, whose
/// fixed point projects (first letter of each window) back to the original.
#[derive(Debug, Clone)]
pub struct SlidingBlockPresentation {
    /// Substitution over the window alphabet.
    pub substitution: Substitution,
    /// Window alphabet letter i names the i-th distinct length-k factor, in
    /// order of first appearance in the fixed point.
    pub window_alphabet: Arc<Alphabet>,
    /// Coding of length-k source factors to window letters.
    pub coding: BlockCode,
    /// First-letter projection sending the presentation back down.
    pub decode: Substitution,
    pub seed: u32,
}

/// Build the length-k sliding-block presentation of the fixed point of
/// `sub` at `seed`. The window alphabet is the set of length-k factors of
/// the fixed point, indexed in order of first appearance; the image of a
/// window `w` starting at position i lists the windows of `sub(x)` at
/// positions covered by the image of `w`'s first letter.
pub fn sliding_block_presentation(
    sub: &Substitution,
    k: usize,
    seed: u32,
) -> Result<SlidingBlockPresentation> {
    if k < 2 {
        return Err(Error::Invalid("window length must be at least 2".into()));
    }
    sub.require_nonerasing()?;

    // Enumerate length-k factors at a horizon where the set has stabilized,
    // growing the horizon until the window set is closed under the induced
    // map.
    let mut horizon = 4096.max(16 * k);
    let factors: Vec<Vec<u32>> = loop {
        let prefix = sub.fixed_point_prefix(seed, horizon)?;
        let firsts = distinct_window_starts(prefix.symbols(), k);
        let at_half = distinct_window_starts(&prefix.symbols()[..horizon / 2], k);
        let stable = firsts.len() == at_half.len();
        let factors: Vec<Vec<u32>> = firsts
            .into_iter()
            .map(|i| prefix.symbols()[i..i + k].to_vec())
            .collect();
        let closed = {
            let known: std::collections::HashSet<&[u32]> =
                factors.iter().map(|w| w.as_slice()).collect();
            factors.iter().all(|w| {
                let expanded = sub.apply_raw(w);
                (0..sub.image_len(w[0])).all(|o| known.contains(&expanded[o..o + k]))
            })
        };
        if (stable && closed) || horizon >= 1 << 22 {
            break factors;
        }
        horizon *= 2;
    };

    let source = sub.source_alphabet();
    let names: Vec<String> = factors
        .iter()
        .map(|w| FiniteWord::from_raw(source.clone(), w.clone()).render().replace(' ', "·"))
        .collect();
    let window_alphabet = Alphabet::new(names)?;
    let index: HashMap<&[u32], u32> = factors
        .iter()
        .enumerate()
        .map(|(i, w)| (w.as_slice(), i as u32))
        .collect();

    // Image of window w = blocks of sub(w) at offsets 0..|sub(w[0])|.
    let mut images = Vec::with_capacity(factors.len());
    for w in &factors {
        let expanded = sub.apply_raw(w);
        let first_len = sub.image_len(w[0]);
        let mut image = Vec::with_capacity(first_len);
        for offset in 0..first_len {
            let window = &expanded[offset..offset + k];
            match index.get(window) {
                Some(&id) => image.push(id),
                None => {
                    let word = FiniteWord::from_raw(source.clone(), window.to_vec());
                    return Err(Error::Invalid(format!(
                        "window set not closed under the induced map (missing '{}')",
                        word.render()
                    )));
                }
            }
        }
        images.push(FiniteWord::from_raw(window_alphabet.clone(), image));
    }
    let presentation =
        Substitution::new(window_alphabet.clone(), window_alphabet.clone(), images)?;

    let coding_entries = factors
        .iter()
        .enumerate()
        .map(|(i, w)| (FiniteWord::from_raw(source.clone(), w.clone()), i as u32))
        .collect();
    let coding = BlockCode::new(k, source.clone(), window_alphabet.clone(), coding_entries)?;

    let decode_images = factors
        .iter()
        .map(|w| FiniteWord::from_raw(source.clone(), vec![w[0]]))
        .collect();
    let decode = Substitution::new(window_alphabet.clone(), source.clone(), decode_images)?;

    Ok(SlidingBlockPresentation {
        substitution: presentation,
        window_alphabet,
        coding,
        decode,
        seed: 0,
    })
}
