use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::words::alphabet::{same_alphabet, Alphabet};

/// A finite word: a sequence of interned symbols over a shared alphabet.
/// The empty word is permitted.
#[derive(Debug, Clone)]
pub struct FiniteWord {
    alphabet: Arc<Alphabet>,
    symbols: Vec<u32>,
}

impl FiniteWord {
    pub fn new(alphabet: Arc<Alphabet>, symbols: Vec<u32>) -> Result<Self> {
        let size = alphabet.size() as u32;
        if let Some(&bad) = symbols.iter().find(|&&s| s >= size) {
            return Err(Error::OutOfRange(format!(
                "symbol index {bad} exceeds alphabet size {size}"
            )));
        }
        Ok(FiniteWord { alphabet, symbols })
    }

    /// Unchecked construction for internal use on already-validated indices.
    pub(crate) fn from_raw(alphabet: Arc<Alphabet>, symbols: Vec<u32>) -> Self {
        FiniteWord { alphabet, symbols }
    }

    pub fn empty(alphabet: Arc<Alphabet>) -> Self {
        FiniteWord { alphabet, symbols: Vec::new() }
    }

    /// Parse from symbol names. Accepts whitespace-separated names; when the
    /// alphabet is compact (single-character names), unseparated text is
    /// accepted as well.
    pub fn parse(alphabet: &Arc<Alphabet>, text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Ok(Self::empty(alphabet.clone()));
        }
        let symbols = if trimmed.contains(char::is_whitespace) {
            trimmed
                .split_whitespace()
                .map(|name| alphabet.index_of(name))
                .collect::<Result<Vec<_>>>()?
        } else if alphabet.contains(trimmed) {
            // A single multi-character symbol.
            vec![alphabet.index_of(trimmed)?]
        } else if alphabet.is_compact() {
            trimmed
                .chars()
                .map(|c| alphabet.index_of(&c.to_string()))
                .collect::<Result<Vec<_>>>()?
        } else {
            return Err(Error::Parse(format!(
                "cannot split '{trimmed}' over non-compact alphabet"
            )));
        };
        Ok(FiniteWord { alphabet: alphabet.clone(), symbols })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn slice(&self, start: usize, end: usize) -> FiniteWord {
        FiniteWord {
            alphabet: self.alphabet.clone(),
            symbols: self.symbols[start..end].to_vec(),
        }
    }

    pub fn concat(&self, other: &FiniteWord) -> Result<FiniteWord> {
        self.check_same_alphabet(other)?;
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Ok(FiniteWord { alphabet: self.alphabet.clone(), symbols })
    }

    pub fn repeat(&self, times: usize) -> FiniteWord {
        FiniteWord {
            alphabet: self.alphabet.clone(),
            symbols: self.symbols.repeat(times),
        }
    }

    /// Occurrence count of each symbol (the abelianization).
    pub fn letter_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.alphabet.size()];
        for &s in &self.symbols {
            counts[s as usize] += 1;
        }
        counts
    }

    pub fn check_same_alphabet(&self, other: &FiniteWord) -> Result<()> {
        if same_alphabet(&self.alphabet, &other.alphabet) {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch(format!(
                "[{}] vs [{}]",
                self.alphabet, other.alphabet
            )))
        }
    }

    /// Render using the compact form when possible, else space-separated.
    pub fn render(&self) -> String {
        if self.alphabet.is_compact() {
            self.symbols.iter().map(|&s| self.alphabet.name(s)).collect()
        } else {
            self.symbols
                .iter()
                .map(|&s| self.alphabet.name(s))
                .collect::<Vec<_>>()
                .join(" ")
        }
    }
}

impl PartialEq for FiniteWord {
    fn eq(&self, other: &Self) -> bool {
        same_alphabet(&self.alphabet, &other.alphabet) && self.symbols == other.symbols
    }
}

impl Eq for FiniteWord {}

impl std::hash::Hash for FiniteWord {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.symbols.hash(state);
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}
