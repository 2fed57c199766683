//! Congenial sequences: chained substitution levels whose telescoped images
//! converge to an infinite word.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::morphisms::substitution::Substitution;
use crate::words::alphabet::same_alphabet;
use crate::words::word::FiniteWord;

/// One level: a substitution from the next alphabet into this one, plus the
/// seed letter of this level (an element of the substitution's target
/// alphabet). The image of the next seed must begin with this seed.
#[derive(Debug, Clone)]
pub struct Level {
    pub substitution: Substitution,
    pub seed: u32,
}

impl Level {
    pub fn new(substitution: Substitution, seed: u32) -> Result<Self> {
        if seed as usize >= substitution.target_alphabet().size() {
            return Err(Error::OutOfRange(format!("seed letter {seed}")));
        }
        Ok(Level { substitution, seed })
    }
}

#[derive(Clone)]
enum Supply {
    Finite(Vec<Level>),
    EventuallyPeriodic { pre: Vec<Level>, period: Vec<Level> },
    Stream(Arc<dyn Fn(usize) -> Result<Level> + Send + Sync>),
}

/// A lazily-materialized stream of levels. Eventually-periodic sequences
/// are stored as (preperiod, period); fully general streams go through a
/// callback with a hard materialization cap.
#[derive(Clone)]
pub struct CongenialSequence {
    supply: Supply,
    cap: usize,
}

/// Hard default cap on materialized levels for callback streams.
pub const DEFAULT_LEVEL_CAP: usize = 100_000;

impl CongenialSequence {
    pub fn finite(levels: Vec<Level>) -> Result<Self> {
        let cs = CongenialSequence { supply: Supply::Finite(levels), cap: DEFAULT_LEVEL_CAP };
        cs.validate_materialized()?;
        Ok(cs)
    }

    pub fn eventually_periodic(pre: Vec<Level>, period: Vec<Level>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Invalid("period must be nonempty".into()));
        }
        let cs = CongenialSequence {
            supply: Supply::EventuallyPeriodic { pre, period },
            cap: DEFAULT_LEVEL_CAP,
        };
        cs.validate_materialized()?;
        Ok(cs)
    }

    /// The constant sequence of one endomorphism prolongable at `seed`.
    pub fn constant(substitution: Substitution, seed: u32) -> Result<Self> {
        if !substitution.is_endomorphism() {
            return Err(Error::Invalid("constant sequence needs an endomorphism".into()));
        }
        Self::eventually_periodic(Vec::new(), vec![Level::new(substitution, seed)?])
    }

    pub fn from_fn<F>(f: F, cap: usize) -> Self
    where
        F: Fn(usize) -> Result<Level> + Send + Sync + 'static,
    {
        CongenialSequence { supply: Supply::Stream(Arc::new(f)), cap }
    }

    /// Number of levels for finite sequences, `None` for infinite supplies.
    pub fn depth(&self) -> Option<usize> {
        match &self.supply {
            Supply::Finite(levels) => Some(levels.len()),
            _ => None,
        }
    }

    pub fn level(&self, n: usize) -> Result<Level> {
        if n >= self.cap {
            return Err(Error::OutOfRange(format!(
                "level {n} beyond materialization cap {}",
                self.cap
            )));
        }
        match &self.supply {
            Supply::Finite(levels) => levels
                .get(n)
                .cloned()
                .ok_or_else(|| Error::OutOfRange(format!("level {n} of {}", levels.len()))),
            Supply::EventuallyPeriodic { pre, period } => Ok(if n < pre.len() {
                pre[n].clone()
            } else {
                period[(n - pre.len()) % period.len()].clone()
            }),
            Supply::Stream(f) => f(n),
        }
    }

    /// Check alphabet chaining and the seed-prefix condition on the stored
    /// levels (plus one period wrap for periodic supplies).
    fn validate_materialized(&self) -> Result<()> {
        let count = match &self.supply {
            Supply::Finite(levels) => levels.len().saturating_sub(1),
            Supply::EventuallyPeriodic { pre, period } => pre.len() + 2 * period.len(),
            Supply::Stream(_) => 0,
        };
        for n in 0..count {
            let here = self.level(n)?;
            let next = self.level(n + 1)?;
            if !same_alphabet(
                here.substitution.source_alphabet(),
                next.substitution.target_alphabet(),
            ) {
                return Err(Error::AlphabetMismatch(format!(
                    "level {n} source differs from level {} target",
                    n + 1
                )));
            }
            let image = here.substitution.image(next.seed);
            if image.first() != Some(&here.seed) {
                return Err(Error::Invalid(format!(
                    "level {n}: image of next seed does not begin with this seed"
                )));
            }
        }
        Ok(())
    }

    /// Telescoped composition of levels `m..n` (applying level `n-1` first).
    pub fn compose(&self, m: usize, n: usize) -> Result<Substitution> {
        if n <= m {
            return Err(Error::OutOfRange(format!("compose({m}, {n}) needs n > m")));
        }
        let mut acc = self.level(n - 1)?.substitution;
        for j in (m..n - 1).rev() {
            acc = self.level(j)?.substitution.compose(&acc)?;
        }
        Ok(acc)
    }

    /// Length-`len` prefix of the level-`m` limit word, via telescoped
    /// images with truncation.
    pub fn level_prefix(&self, m: usize, len: usize) -> Result<FiniteWord> {
        let base = self.level(m)?;
        let alphabet = base.substitution.target_alphabet().clone();
        if len == 0 {
            return Ok(FiniteWord::empty(alphabet));
        }
        if len == 1 {
            return Ok(FiniteWord::from_raw(alphabet, vec![base.seed]));
        }

        // Walk levels upward until the telescoped image of the top seed is
        // long enough. `lengths[b]` tracks the telescoped image length of
        // letter b of the current top alphabet, with saturating arithmetic.
        let mut lengths: Vec<u128> = {
            let d = base.substitution.source_alphabet().size();
            (0..d as u32)
                .map(|b| base.substitution.image_len(b) as u128)
                .collect()
        };
        let mut top = m + 1;
        let mut reached = lengths[self.require_level(top, len)?.seed as usize];
        let mut stagnant = 0usize;
        while reached < len as u128 {
            let level = self.require_level(top, len)?;
            let d = level.substitution.source_alphabet().size();
            lengths = (0..d as u32)
                .map(|b| {
                    level
                        .substitution
                        .image(b)
                        .iter()
                        .map(|&c| lengths[c as usize])
                        .fold(0u128, u128::saturating_add)
                })
                .collect();
            top += 1;
            let new_reached = lengths[self.require_level(top, len)?.seed as usize];
            stagnant = if new_reached > reached { 0 } else { stagnant + 1 };
            if stagnant > 64 {
                return Err(Error::DegenerateLimit(format!(
                    "image lengths stalled at {new_reached} symbols before level {top}"
                )));
            }
            reached = new_reached;
        }

        // Materialize top-down, truncating at `len` each step.
        let mut word = vec![self.level(top)?.seed];
        for j in (m..top).rev() {
            word = self.level(j)?.substitution.apply_prefix(&word, len);
        }
        word.truncate(len);
        if word.len() < len {
            return Err(Error::DegenerateLimit(format!(
                "materialized only {} of {len} symbols",
                word.len()
            )));
        }
        Ok(FiniteWord::from_raw(alphabet, word))
    }

    fn require_level(&self, n: usize, len: usize) -> Result<Level> {
        self.level(n).map_err(|e| match e {
            Error::OutOfRange(_) => Error::DegenerateLimit(format!(
                "levels exhausted before reaching {len} symbols (need level {n})"
            )),
            other => other,
        })
    }

    /// For each `n <= horizon`, whether every letter of the level-`n`
    /// alphabet occurs in every image of the composition of levels
    /// `n..n+k`.
    pub fn positivity_check(&self, k: usize, horizon: usize) -> Result<Vec<bool>> {
        if k == 0 {
            return Err(Error::Invalid("k must be positive".into()));
        }
        (0..=horizon)
            .map(|n| {
                let composed = self.compose(n, n + k)?;
                let targets = composed.target_alphabet().size();
                let sources = composed.source_alphabet().size() as u32;
                Ok((0..sources).all(|a| {
                    let mut seen = vec![false; targets];
                    for &b in composed.image(a) {
                        seen[b as usize] = true;
                    }
                    seen.iter().all(|&x| x)
                }))
            })
            .collect()
    }
}
