//! Arnoux-Rauzy words from directive sequences, and their weak/strong
//! partial quotients.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::morphisms::substitution::Substitution;
use crate::sadic::congenial::{CongenialSequence, Level, DEFAULT_LEVEL_CAP};
use crate::words::alphabet::Alphabet;
use crate::words::word::FiniteWord;

/// The substitution fixing `letter` and appending it to every other letter:
/// letter -> letter, b -> b letter.
pub fn ar_substitution(alphabet: &Arc<Alphabet>, letter: u32) -> Result<Substitution> {
    if letter as usize >= alphabet.size() {
        return Err(Error::OutOfRange(format!("letter {letter}")));
    }
    let images = (0..alphabet.size() as u32)
        .map(|b| {
            let symbols = if b == letter { vec![b] } else { vec![b, letter] };
            FiniteWord::from_raw(alphabet.clone(), symbols)
        })
        .collect();
    Substitution::new(alphabet.clone(), alphabet.clone(), images)
}

/// A stream of letters driving a product of AR substitutions, stored as
/// preperiod + repeated period (or a plain finite list).
#[derive(Debug, Clone)]
pub struct DirectiveSequence {
    alphabet: Arc<Alphabet>,
    pre: Vec<u32>,
    period: Vec<u32>,
}

impl DirectiveSequence {
    pub fn new(alphabet: Arc<Alphabet>, pre: Vec<u32>, period: Vec<u32>) -> Result<Self> {
        let size = alphabet.size() as u32;
        if pre.is_empty() && period.is_empty() {
            return Err(Error::Invalid("directive sequence is empty".into()));
        }
        if pre.iter().chain(&period).any(|&a| a >= size) {
            return Err(Error::OutOfRange("directive letter".into()));
        }
        Ok(DirectiveSequence { alphabet, pre, period })
    }

    /// Parse the file format: a `letters: a b c` header line, then the
    /// directive stream with an optional parenthesized repeated period.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty directive input".into()))?
            .trim();
        let names = header
            .strip_prefix("letters:")
            .ok_or_else(|| Error::Parse("expected 'letters:' header".into()))?;
        let alphabet = Alphabet::new(names.split_whitespace().collect::<Vec<_>>())?;
        let body: String = lines.collect::<Vec<_>>().join(" ");
        let (pre_text, period_text) = match body.find('(') {
            Some(open) => {
                let close = body
                    .rfind(')')
                    .ok_or_else(|| Error::Parse("unclosed '(' in directive".into()))?;
                (body[..open].to_string(), body[open + 1..close].to_string())
            }
            None => (body, String::new()),
        };
        let parse_letters = |s: &str| -> Result<Vec<u32>> {
            let s = s.trim();
            if s.is_empty() {
                return Ok(Vec::new());
            }
            FiniteWord::parse(&alphabet, s).map(|w| w.symbols().to_vec())
        };
        DirectiveSequence::new(alphabet.clone(), parse_letters(&pre_text)?, parse_letters(&period_text)?)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn letter(&self, n: usize) -> Option<u32> {
        if n < self.pre.len() {
            Some(self.pre[n])
        } else if self.period.is_empty() {
            None
        } else {
            Some(self.period[(n - self.pre.len()) % self.period.len()])
        }
    }

    pub fn is_infinite(&self) -> bool {
        !self.period.is_empty()
    }

    /// First `len` directive letters (shorter when finite).
    pub fn window(&self, len: usize) -> Vec<u32> {
        (0..len).map_while(|n| self.letter(n)).collect()
    }
}

/// Build the congenial sequence of AR substitutions for a directive
/// sequence, seeded at a constant letter. Returns warnings when the AR
/// condition (every letter occurs infinitely often) cannot be verified on
/// the materialized window.
pub fn ar_congenial(
    ds: &DirectiveSequence,
    seed: u32,
) -> Result<(CongenialSequence, Vec<String>)> {
    let alphabet = ds.alphabet().clone();
    if seed as usize >= alphabet.size() {
        return Err(Error::OutOfRange(format!("seed letter {seed}")));
    }
    let mut warnings = Vec::new();
    let check: Vec<u32> = if ds.is_infinite() {
        ds.period.clone()
    } else {
        ds.pre.clone()
    };
    for a in 0..alphabet.size() as u32 {
        if !check.contains(&a) {
            warnings.push(format!(
                "AR condition unverified: letter '{}' missing from the {} directive window",
                alphabet.name(a),
                if ds.is_infinite() { "periodic" } else { "finite" }
            ));
        }
    }

    let ds_clone = ds.clone();
    let alphabet_clone = alphabet.clone();
    let make = move |n: usize| -> Result<Level> {
        let letter = ds_clone
            .letter(n)
            .ok_or_else(|| Error::OutOfRange(format!("directive exhausted at {n}")))?;
        Level::new(ar_substitution(&alphabet_clone, letter)?, seed)
    };
    let cs = if ds.is_infinite() {
        CongenialSequence::from_fn(make, DEFAULT_LEVEL_CAP)
    } else {
        let levels = (0..ds.pre.len()).map(&make).collect::<Result<Vec<_>>>()?;
        CongenialSequence::finite(levels)?
    };
    Ok((cs, warnings))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialQuotients {
    /// Letters of the run-length grouping, paired with their run lengths
    /// (the weak quotients).
    pub runs: Vec<(u32, usize)>,
    /// Window indices: the k-th window over positions `K[k]..=K[k+1]` is
    /// the first from `K[k]` to see the whole alphabet.
    pub window_indices: Vec<usize>,
    /// First differences of the window indices.
    pub strong: Vec<usize>,
}

impl PartialQuotients {
    pub fn weak(&self) -> Vec<usize> {
        self.runs.iter().map(|&(_, k)| k).collect()
    }

    /// Rebuild the directive window from the run-length grouping.
    pub fn reconstruct(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for &(letter, len) in &self.runs {
            out.extend(std::iter::repeat(letter).take(len));
        }
        out
    }
}

/// Run-length grouping (weak quotients) and full-alphabet window gaps
/// (strong quotients) of the first `window` directive letters.
pub fn partial_quotients(ds: &DirectiveSequence, window: usize) -> PartialQuotients {
    let letters = ds.window(window);
    let mut runs: Vec<(u32, usize)> = Vec::new();
    for &a in &letters {
        match runs.last_mut() {
            Some((b, k)) if *b == a => *k += 1,
            _ => runs.push((a, 1)),
        }
    }

    let size = ds.alphabet().size();
    let mut window_indices = vec![0usize];
    let mut start = 0usize;
    loop {
        let mut seen = vec![false; size];
        let mut count = 0usize;
        let mut next = None;
        for (offset, &a) in letters[start..].iter().enumerate() {
            if !seen[a as usize] {
                seen[a as usize] = true;
                count += 1;
                if count == size {
                    next = Some(start + offset);
                    break;
                }
            }
        }
        match next {
            Some(k) => {
                window_indices.push(k);
                start = k;
            }
            None => break,
        }
    }
    let strong = window_indices.windows(2).map(|w| w[1] - w[0]).collect();
    PartialQuotients { runs, window_indices, strong }
}
