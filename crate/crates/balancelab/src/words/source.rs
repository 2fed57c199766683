//! Lazily-materialized infinite (or long finite) words behind a uniform
//! prefix interface.
//!
//! Prefixes are deterministic and coherent: `prefix(m)` is a prefix of
//! `prefix(n)` for m <= n, and `prefix(0)` is empty. Generators are pure,
//! so concurrent materialization is idempotent.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};

use crate::error::{Error, Result};
use crate::morphisms::block::BlockCode;
use crate::morphisms::substitution::Substitution;
use crate::numeration::dfao::Dfao;
use crate::numeration::system::NumerationSystem;
use crate::sadic::congenial::CongenialSequence;
use crate::sadic::sturmian::{sturmian_rotation, IntervalVariant};
use crate::toeplitz::spec::ToeplitzSpec;
use crate::words::alphabet::Alphabet;
use crate::words::word::FiniteWord;

#[derive(Clone)]
enum Generator {
    /// A finite word; prefixes beyond its length are errors.
    Explicit(FiniteWord),
    /// A finite word repeated forever.
    Periodic(FiniteWord),
    FixedPoint { substitution: Substitution, seed: u32 },
    SAdicLimit(CongenialSequence),
    RotationCoding {
        alpha_num: BigUint,
        alpha_den: BigUint,
        rho_num: BigInt,
        rho_den: BigUint,
        variant: IntervalVariant,
    },
    Toeplitz(ToeplitzSpec),
    Dfao { automaton: Arc<Dfao>, numeration: NumerationSystem },
    BlockCodeImage { code: Arc<BlockCode>, inner: Arc<WordSource> },
    Shift { inner: Arc<WordSource>, offset: usize },
}

/// A word source: an alphabet plus a deterministic prefix generator.
#[derive(Clone)]
pub struct WordSource {
    alphabet: Arc<Alphabet>,
    generator: Generator,
    description: String,
}

impl WordSource {
    pub fn explicit(word: FiniteWord) -> Self {
        WordSource {
            alphabet: word.alphabet().clone(),
            description: format!("explicit({} symbols)", word.len()),
            generator: Generator::Explicit(word),
        }
    }

    pub fn periodic(word: FiniteWord) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(WordSource {
            alphabet: word.alphabet().clone(),
            description: format!("periodic({})", word.render()),
            generator: Generator::Periodic(word),
        })
    }

    pub fn fixed_point(substitution: Substitution, seed: u32) -> Result<Self> {
        if !substitution.is_endomorphism() {
            return Err(Error::Invalid("fixed point of a non-endomorphism".into()));
        }
        // Fail fast on non-prolongable seeds.
        substitution.fixed_point_prefix(seed, 2)?;
        Ok(WordSource {
            alphabet: substitution.source_alphabet().clone(),
            description: format!(
                "fixed-point(seed {})",
                substitution.source_alphabet().name(seed)
            ),
            generator: Generator::FixedPoint { substitution, seed },
        })
    }

    pub fn sadic_limit(sequence: CongenialSequence) -> Result<Self> {
        let alphabet = sequence.level(0)?.substitution.target_alphabet().clone();
        Ok(WordSource {
            alphabet,
            description: "s-adic-limit".into(),
            generator: Generator::SAdicLimit(sequence),
        })
    }

    pub fn rotation_coding(
        alpha_num: BigUint,
        alpha_den: BigUint,
        rho_num: BigInt,
        rho_den: BigUint,
        variant: IntervalVariant,
    ) -> Result<Self> {
        // Validate parameters eagerly with a tiny prefix.
        sturmian_rotation((&alpha_num, &alpha_den), (&rho_num, &rho_den), variant, 1)?;
        Ok(WordSource {
            alphabet: Alphabet::from_chars("01"),
            description: format!("rotation({alpha_num}/{alpha_den})"),
            generator: Generator::RotationCoding { alpha_num, alpha_den, rho_num, rho_den, variant },
        })
    }

    pub fn toeplitz(spec: ToeplitzSpec) -> Self {
        WordSource {
            alphabet: spec.base_alphabet().clone(),
            description: "toeplitz".into(),
            generator: Generator::Toeplitz(spec),
        }
    }

    pub fn dfao(automaton: Dfao, numeration: NumerationSystem) -> Result<Self> {
        automaton.validate_total(numeration)?;
        Ok(WordSource {
            alphabet: automaton.output_alphabet().clone(),
            description: "dfao".into(),
            generator: Generator::Dfao { automaton: Arc::new(automaton), numeration },
        })
    }

    pub fn block_code_image(code: BlockCode, inner: WordSource) -> Result<Self> {
        if !crate::words::alphabet::same_alphabet(code.source_alphabet(), inner.alphabet()) {
            return Err(Error::AlphabetMismatch(
                "block code source differs from the inner word".into(),
            ));
        }
        Ok(WordSource {
            alphabet: code.target_alphabet().clone(),
            description: format!("block-code({})/{}", code.k(), inner.description),
            generator: Generator::BlockCodeImage {
                code: Arc::new(code),
                inner: Arc::new(inner),
            },
        })
    }

    pub fn shifted(inner: WordSource, offset: usize) -> Self {
        WordSource {
            alphabet: inner.alphabet.clone(),
            description: format!("shift({offset})/{}", inner.description),
            generator: Generator::Shift { inner: Arc::new(inner), offset },
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn with_description(mut self, description: impl Into<String>) -> Self {
        self.description = description.into();
        self
    }

    /// The length-`len` prefix. Deterministic: equal `len` gives equal
    /// words, and shorter prefixes are prefixes of longer ones.
    pub fn prefix(&self, len: usize) -> Result<FiniteWord> {
        match &self.generator {
            Generator::Explicit(word) => {
                if len > word.len() {
                    Err(Error::ExplicitExhausted { len: word.len() })
                } else {
                    Ok(word.slice(0, len))
                }
            }
            Generator::Periodic(word) => {
                let mut symbols = Vec::with_capacity(len);
                while symbols.len() < len {
                    let take = (len - symbols.len()).min(word.len());
                    symbols.extend_from_slice(&word.symbols()[..take]);
                }
                Ok(FiniteWord::from_raw(self.alphabet.clone(), symbols))
            }
            Generator::FixedPoint { substitution, seed } => {
                substitution.fixed_point_prefix(*seed, len)
            }
            Generator::SAdicLimit(sequence) => sequence.level_prefix(0, len),
            Generator::RotationCoding { alpha_num, alpha_den, rho_num, rho_den, variant } => {
                sturmian_rotation((alpha_num, alpha_den), (rho_num, rho_den), *variant, len)
            }
            Generator::Toeplitz(spec) => spec.prefix(len),
            Generator::Dfao { automaton, numeration } => {
                let mut symbols = Vec::with_capacity(len);
                for n in 0..len as u64 {
                    symbols.push(automaton.letter_at(*numeration, n)?);
                }
                Ok(FiniteWord::from_raw(self.alphabet.clone(), symbols))
            }
            Generator::BlockCodeImage { code, inner } => {
                if len == 0 {
                    return Ok(FiniteWord::empty(self.alphabet.clone()));
                }
                let needed = len + code.k() - 1;
                let base = inner.prefix(needed)?;
                let symbols = code.apply_raw(base.symbols())?;
                Ok(FiniteWord::from_raw(self.alphabet.clone(), symbols))
            }
            Generator::Shift { inner, offset } => {
                let base = inner.prefix(len + offset)?;
                Ok(base.slice(*offset, base.len()))
            }
        }
    }
}

impl std::fmt::Debug for WordSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "WordSource({})", self.description)
    }
}
