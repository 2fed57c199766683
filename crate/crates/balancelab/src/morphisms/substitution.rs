use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::words::alphabet::{same_alphabet, Alphabet};
use crate::words::word::FiniteWord;

/// A substitution: a map letter -> word, extended to words by concatenation.
/// Source and target alphabets may differ. Erasing images (the empty word)
/// are permitted but flagged; fixed-point and classification operations
/// reject erasing substitutions.
#[derive(Debug, Clone)]
pub struct Substitution {
    source: Arc<Alphabet>,
    target: Arc<Alphabet>,
    images: Vec<Vec<u32>>,
}

impl Substitution {
    pub fn new(
        source: Arc<Alphabet>,
        target: Arc<Alphabet>,
        images: Vec<FiniteWord>,
    ) -> Result<Self> {
        if images.len() != source.size() {
            return Err(Error::Invalid(format!(
                "need {} images, got {}",
                source.size(),
                images.len()
            )));
        }
        let mut raw = Vec::with_capacity(images.len());
        for image in &images {
            if !same_alphabet(image.alphabet(), &target) {
                return Err(Error::AlphabetMismatch(format!(
                    "image '{}' is not over the target alphabet",
                    image
                )));
            }
            raw.push(image.symbols().to_vec());
        }
        Ok(Substitution { source, target, images: raw })
    }

    /// Endomorphism from rule text, one rule per line: `letter -> image`,
    /// with `.` denoting the empty image. Symbols are whitespace-separated;
    /// single-character unseparated images are accepted for compact
    /// alphabets.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rules: Vec<(String, String)> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| Error::Parse(format!("missing '->' in rule '{line}'")))?;
            rules.push((lhs.trim().to_string(), rhs.trim().to_string()));
        }
        if rules.is_empty() {
            return Err(Error::Parse("no rules".into()));
        }
        Self::from_named_rules(&rules)
    }

    /// Endomorphism from (letter, image-text) pairs; the alphabet is the
    /// rule order.
    pub fn from_named_rules(rules: &[(String, String)]) -> Result<Self> {
        let alphabet = Alphabet::new(rules.iter().map(|(l, _)| l.clone()).collect())?;
        let images = rules
            .iter()
            .map(|(_, rhs)| {
                if rhs == "." {
                    Ok(FiniteWord::empty(alphabet.clone()))
                } else {
                    FiniteWord::parse(&alphabet, rhs)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Substitution::new(alphabet.clone(), alphabet, images)
    }

    /// Convenience for endomorphisms over single-character alphabets:
    /// `Substitution::endomorphism("abc", &[("a","ab"), ...])`.
    pub fn endomorphism(letters: &str, rules: &[(&str, &str)]) -> Result<Self> {
        let alphabet = Alphabet::from_chars(letters);
        let by_name: HashMap<&str, &str> = rules.iter().copied().collect();
        let images = alphabet
            .names()
            .iter()
            .map(|name| {
                let rhs = by_name
                    .get(name.as_str())
                    .ok_or_else(|| Error::Invalid(format!("missing rule for '{name}'")))?;
                if *rhs == "." {
                    Ok(FiniteWord::empty(alphabet.clone()))
                } else {
                    FiniteWord::parse(&alphabet, rhs)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Substitution::new(alphabet.clone(), alphabet.clone(), images)
    }

    pub fn source_alphabet(&self) -> &Arc<Alphabet> {
        &self.source
    }

    pub fn target_alphabet(&self) -> &Arc<Alphabet> {
        &self.target
    }

    pub fn is_endomorphism(&self) -> bool {
        same_alphabet(&self.source, &self.target)
    }

    pub fn image(&self, letter: u32) -> &[u32] {
        &self.images[letter as usize]
    }

    pub fn image_word(&self, letter: u32) -> FiniteWord {
        FiniteWord::from_raw(self.target.clone(), self.images[letter as usize].clone())
    }

    pub fn image_len(&self, letter: u32) -> usize {
        self.images[letter as usize].len()
    }

    pub fn is_erasing(&self) -> bool {
        self.images.iter().any(|im| im.is_empty())
    }

    pub fn require_nonerasing(&self) -> Result<()> {
        match (0..self.source.size() as u32).find(|&a| self.images[a as usize].is_empty()) {
            Some(a) => Err(Error::ErasingSubstitution(format!(
                "letter '{}' maps to the empty word",
                self.source.name(a)
            ))),
            None => Ok(()),
        }
    }

    /// Max image length.
    pub fn max_image_len(&self) -> usize {
        self.images.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Min image length.
    pub fn min_image_len(&self) -> usize {
        self.images.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Sum of image lengths.
    pub fn total_image_len(&self) -> usize {
        self.images.iter().map(Vec::len).sum()
    }

    /// All images begin with the same letter.
    pub fn is_left_proper(&self) -> bool {
        match self.images.first().and_then(|im| im.first()) {
            Some(&first) => self
                .images
                .iter()
                .all(|im| im.first() == Some(&first)),
            None => false,
        }
    }

    /// Image of a word: concatenation of letter images in order.
    pub fn apply(&self, word: &FiniteWord) -> Result<FiniteWord> {
        if !same_alphabet(word.alphabet(), &self.source) {
            return Err(Error::AlphabetMismatch(format!(
                "word over [{}], substitution source [{}]",
                word.alphabet(),
                self.source
            )));
        }
        Ok(FiniteWord::from_raw(self.target.clone(), self.apply_raw(word.symbols())))
    }

    pub(crate) fn apply_raw(&self, symbols: &[u32]) -> Vec<u32> {
        let total: usize = symbols.iter().map(|&a| self.images[a as usize].len()).sum();
        let mut out = Vec::with_capacity(total);
        for &a in symbols {
            out.extend_from_slice(&self.images[a as usize]);
        }
        out
    }

    /// Composition `self . other` (apply `other` first).
    pub fn compose(&self, other: &Substitution) -> Result<Substitution> {
        if !same_alphabet(&self.source, &other.target) {
            return Err(Error::AlphabetMismatch(
                "composition alphabets do not chain".into(),
            ));
        }
        let images = (0..other.source.size() as u32)
            .map(|a| self.apply_raw(other.image(a)))
            .collect();
        Ok(Substitution {
            source: other.source.clone(),
            target: self.target.clone(),
            images,
        })
    }

    /// n-th iterate of an endomorphism.
    pub fn power(&self, n: usize) -> Result<Substitution> {
        if !self.is_endomorphism() {
            return Err(Error::Invalid("power of a non-endomorphism".into()));
        }
        let mut acc = Substitution::identity(self.source.clone());
        for _ in 0..n {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    pub fn identity(alphabet: Arc<Alphabet>) -> Substitution {
        let images = (0..alphabet.size() as u32).map(|a| vec![a]).collect();
        Substitution { source: alphabet.clone(), target: alphabet, images }
    }

    /// Length-`len` prefix of the fixed point starting at `seed`, by
    /// iterated expansion with truncation.
    pub fn fixed_point_prefix(&self, seed: u32, len: usize) -> Result<FiniteWord> {
        if !self.is_endomorphism() {
            return Err(Error::Invalid("fixed point of a non-endomorphism".into()));
        }
        let seed_name = self.source.name(seed).to_string();
        let image = self.image(seed);
        if image.first() != Some(&seed) {
            return Err(Error::NotProlongable(seed_name));
        }
        if len == 0 {
            return Ok(FiniteWord::empty(self.source.clone()));
        }
        // Reject erasing images on letters reachable from the seed.
        let mut reachable = vec![false; self.source.size()];
        let mut stack = vec![seed];
        reachable[seed as usize] = true;
        while let Some(a) = stack.pop() {
            if self.images[a as usize].is_empty() {
                return Err(Error::ErasingSubstitution(format!(
                    "letter '{}' reachable from seed maps to the empty word",
                    self.source.name(a)
                )));
            }
            for &b in self.image(a) {
                if !reachable[b as usize] {
                    reachable[b as usize] = true;
                    stack.push(b);
                }
            }
        }
        let mut current = vec![seed];
        loop {
            if current.len() >= len {
                current.truncate(len);
                return Ok(FiniteWord::from_raw(self.source.clone(), current));
            }
            let next = self.apply_prefix(&current, len);
            if next.len() == current.len() {
                return Err(Error::FixedPointFinite(seed_name));
            }
            current = next;
        }
    }

    /// Image truncated at `cap` symbols.
    pub(crate) fn apply_prefix(&self, symbols: &[u32], cap: usize) -> Vec<u32> {
        let mut out = Vec::with_capacity(cap.min(symbols.len() * self.max_image_len().max(1)));
        for &a in symbols {
            out.extend_from_slice(&self.images[a as usize]);
            if out.len() >= cap {
                out.truncate(cap);
                break;
            }
        }
        out
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in 0..self.source.size() as u32 {
            if a > 0 {
                writeln!(f)?;
            }
            let image = self.image_word(a);
            let rhs = if image.is_empty() { ".".to_string() } else { image.render() };
            write!(f, "{} -> {}", self.source.name(a), rhs)?;
        }
        Ok(())
    }
}
