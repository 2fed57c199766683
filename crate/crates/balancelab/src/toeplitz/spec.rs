//! Layered constant-length substitution towers: nested period structures
//! built from level alphabets in bijection with admissible block sets.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::toeplitz::multinomial::{arrangement_count, stirling_log_estimate, unrank_arrangement};
use crate::words::alphabet::Alphabet;
use crate::words::word::FiniteWord;

/// Size of a level alphabet, exact when computable.
#[derive(Debug, Clone)]
pub enum SizeInfo {
    Exact(BigUint),
    /// Natural log of the size, for levels too large to count exactly.
    LogOnly(f64),
}

impl SizeInfo {
    pub fn as_u64(&self) -> Option<u64> {
        match self {
            SizeInfo::Exact(n) => n.to_u64(),
            SizeInfo::LogOnly(_) => None,
        }
    }

    pub fn ln(&self) -> f64 {
        match self {
            SizeInfo::Exact(n) => {
                let bits = n.bits();
                if bits <= 53 {
                    (n.to_u64().unwrap_or(1) as f64).ln()
                } else {
                    let shift = bits - 53;
                    let head = (n >> shift).to_u64().unwrap_or(1) as f64;
                    head.ln() + (shift as f64) * std::f64::consts::LN_2
                }
            }
            SizeInfo::LogOnly(l) => *l,
        }
    }
}

/// Per-level data of the block-counting construction.
#[derive(Debug, Clone)]
pub struct ExpLevelStats {
    pub level: usize,
    /// Alphabet size of this level.
    pub alphabet_size: u64,
    pub k: u64,
    /// Length of the free middle section of each block.
    pub middle_len: u64,
    /// Number of admissible blocks = size of the next alphabet.
    pub member_count: SizeInfo,
    /// k = 2 collapses the construction to a single block.
    pub degenerate: bool,
    /// Full middle-section list in rank order when within the cap.
    pub enumerated_middles: Option<Vec<Vec<u32>>>,
    /// Deterministic sample of (rank, middle) pairs when over the cap.
    pub sampled: Vec<(u64, Vec<u32>)>,
}

#[derive(Debug, Clone)]
pub struct ExpParams {
    pub base_size: u64,
    pub ks: Vec<u64>,
    pub enumeration_cap: u64,
    pub sample_count: usize,
    pub rng_seed: u64,
}

#[derive(Debug, Clone)]
enum SpecKind {
    /// `levels[n][letter]` is the level-n image; `repeat` extends the list
    /// periodically forever.
    Explicit { levels: Vec<Vec<Vec<u64>>>, repeat: bool },
    Exp { params: ExpParams, stats: Vec<ExpLevelStats> },
}

/// A tower of constant-length levels defining a limit word over the base
/// alphabet. Level n maps letters of alphabet n+1 to equal-length words
/// over alphabet n; the limit word telescopes the images of the canonical
/// seed letters.
#[derive(Debug, Clone)]
pub struct ToeplitzSpec {
    base: Arc<Alphabet>,
    kind: SpecKind,
}

/// Default cap on fully enumerated block sets.
pub const ENUMERATION_CAP: u64 = 1_000_000;
/// Members sampled per oversized level.
pub const SAMPLE_COUNT: usize = 16;
/// Exact arrangement counting is feasible up to this middle length.
const EXACT_MIDDLE_CAP: u64 = 100_000;

impl ToeplitzSpec {
    /// Explicit levels over a named base alphabet. `levels[n][letter]` maps
    /// level-(n+1) letters to words over level-n letters; when `repeat` is
    /// set, the level list repeats forever.
    pub fn explicit(
        base: Arc<Alphabet>,
        levels: Vec<Vec<Vec<u64>>>,
        repeat: bool,
    ) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::Invalid("need at least one level".into()));
        }
        let count = levels.len();
        let spec = ToeplitzSpec { base, kind: SpecKind::Explicit { levels, repeat } };
        // Structural sanity: image letters in range, uniform lengths.
        for n in 0..count {
            let q = spec.image_len(n)?;
            let size = spec.alphabet_size_u64(n)?;
            let next_size = spec.alphabet_size_u64(n + 1)?;
            for letter in 0..next_size {
                let image = spec.image_prefix(n, letter, usize::MAX)?;
                if image.len() as u64 != q {
                    return Err(Error::Invalid(format!(
                        "level {n}: image lengths differ ({} vs {q})",
                        image.len()
                    )));
                }
                if image.iter().any(|&b| b >= size) {
                    return Err(Error::OutOfRange(format!("level {n} image letter")));
                }
            }
        }
        Ok(spec)
    }

    /// The two-letter tower whose level blocks follow the doubling pattern
    /// 0100 / 0101 at every level.
    pub fn period_doubling() -> Self {
        ToeplitzSpec {
            base: Alphabet::from_chars("01"),
            kind: SpecKind::Explicit {
                levels: vec![vec![vec![0, 1, 0, 0], vec![0, 1, 0, 1]]],
                repeat: true,
            },
        }
    }

    /// Block-counting construction: level 0 is the identity on `l0`
    /// letters; level n >= 1 enumerates all blocks that start with the
    /// ascending run `0 1 .. l_n-1`, end with its reversal, and use every
    /// letter exactly `k_n` times. Blocks are ranked lexicographically by
    /// their middle section; the letter of rank 0 is the canonical seed.
    pub fn exp(l0: u64, ks: Vec<u64>, cap: u64, rng_seed: u64) -> Result<Self> {
        if l0 < 2 {
            return Err(Error::Invalid("need at least two base letters".into()));
        }
        if ks.is_empty() {
            return Err(Error::Invalid("need at least one block level".into()));
        }
        if let Some(&bad) = ks.iter().find(|&&k| k < 2) {
            return Err(Error::Invalid(format!(
                "block level with k = {bad}: every letter must fit at least twice"
            )));
        }
        let params = ExpParams {
            base_size: l0,
            ks: ks.clone(),
            enumeration_cap: cap,
            sample_count: SAMPLE_COUNT,
            rng_seed,
        };
        let mut stats = Vec::new();
        let mut size = SizeInfo::Exact(BigUint::from(l0));
        for (i, &k) in ks.iter().enumerate() {
            let level = i + 1;
            let alphabet_size = size.as_u64().ok_or_else(|| {
                Error::Invalid(format!(
                    "level {level} alphabet too large to address; reduce depth"
                ))
            })?;
            let middle_len = (k - 2) * alphabet_size;
            let member_count = if middle_len <= EXACT_MIDDLE_CAP {
                SizeInfo::Exact(arrangement_count(&vec![k - 2; alphabet_size as usize])?)
            } else {
                SizeInfo::LogOnly(stirling_log_estimate(alphabet_size, k - 2)?)
            };
            let enumerated_middles = match &member_count {
                SizeInfo::Exact(c) if c.to_u64().map_or(false, |c| c <= cap) => {
                    let count = c.to_u64().expect("checked");
                    let counts = vec![k - 2; alphabet_size as usize];
                    Some(
                        (0..count)
                            .map(|r| unrank_arrangement(&counts, &BigUint::from(r)))
                            .collect::<Result<Vec<_>>>()?,
                    )
                }
                _ => None,
            };
            let sampled = if enumerated_middles.is_none() {
                sample_members(&member_count, k, alphabet_size, rng_seed, SAMPLE_COUNT)?
            } else {
                Vec::new()
            };
            stats.push(ExpLevelStats {
                level,
                alphabet_size,
                k,
                middle_len,
                member_count: member_count.clone(),
                degenerate: k == 2,
                enumerated_middles,
                sampled,
            });
            size = member_count;
        }
        let names: Vec<String> = (0..l0).map(|i| level_letter_name(i)).collect();
        Ok(ToeplitzSpec {
            base: Alphabet::new(names)?,
            kind: SpecKind::Exp { params, stats },
        })
    }

    pub fn base_alphabet(&self) -> &Arc<Alphabet> {
        &self.base
    }

    pub fn exp_stats(&self) -> Option<&[ExpLevelStats]> {
        match &self.kind {
            SpecKind::Exp { stats, .. } => Some(stats),
            _ => None,
        }
    }

    /// Number of defined levels, `None` when the tower repeats forever.
    pub fn defined_levels(&self) -> Option<usize> {
        match &self.kind {
            SpecKind::Explicit { repeat: true, .. } => None,
            SpecKind::Explicit { levels, repeat: false } => Some(levels.len()),
            SpecKind::Exp { params, .. } => Some(params.ks.len() + 1),
        }
    }

    /// Uniform image length of level `n`.
    pub fn image_len(&self, n: usize) -> Result<u64> {
        match &self.kind {
            SpecKind::Explicit { levels, repeat } => {
                let idx = if *repeat { n % levels.len() } else { n };
                levels
                    .get(idx)
                    .and_then(|images| images.first())
                    .map(|im| im.len() as u64)
                    .ok_or_else(|| Error::OutOfRange(format!("level {n}")))
            }
            SpecKind::Exp { params, stats } => {
                if n == 0 {
                    Ok(1)
                } else {
                    stats
                        .get(n - 1)
                        .map(|s| s.k * s.alphabet_size)
                        .ok_or_else(|| Error::OutOfRange(format!("level {n} of {}", params.ks.len())))
                }
            }
        }
    }

    /// Size of the level-`n` alphabet when it fits in a machine word.
    pub fn alphabet_size_u64(&self, n: usize) -> Result<u64> {
        match self.alphabet_size(n)? {
            SizeInfo::Exact(c) => c.to_u64().ok_or_else(|| {
                Error::Invalid(format!("level {n} alphabet exceeds u64 range"))
            }),
            SizeInfo::LogOnly(_) => Err(Error::Invalid(format!(
                "level {n} alphabet size only known asymptotically"
            ))),
        }
    }

    pub fn alphabet_size(&self, n: usize) -> Result<SizeInfo> {
        match &self.kind {
            SpecKind::Explicit { levels, repeat } => {
                if n == 0 {
                    return Ok(SizeInfo::Exact(BigUint::from(self.base.size())));
                }
                let idx = if *repeat { (n - 1) % levels.len() } else { n - 1 };
                levels
                    .get(idx)
                    .map(|images| SizeInfo::Exact(BigUint::from(images.len())))
                    .ok_or_else(|| Error::OutOfRange(format!("level {n}")))
            }
            SpecKind::Exp { params, stats } => {
                if n <= 1 {
                    Ok(SizeInfo::Exact(BigUint::from(params.base_size)))
                } else {
                    stats
                        .get(n - 2)
                        .map(|s| s.member_count.clone())
                        .ok_or_else(|| Error::OutOfRange(format!("level {n}")))
                }
            }
        }
    }

    /// Period at level `n`: the number of base symbols expanded from one
    /// level-`n` letter.
    pub fn period(&self, n: usize) -> Result<u64> {
        let mut p = 1u64;
        for j in 0..n {
            p = p
                .checked_mul(self.image_len(j)?)
                .ok_or_else(|| Error::Invalid(format!("period at level {n} overflows")))?;
        }
        Ok(p)
    }

    /// Image of a level-(n+1) letter under level n, truncated to `cap`
    /// symbols. For block levels the ascending-run head is produced lazily,
    /// so deep seeds expand without materializing enormous blocks.
    pub fn image_prefix(&self, n: usize, letter: u64, cap: usize) -> Result<Vec<u64>> {
        match &self.kind {
            SpecKind::Explicit { levels, repeat } => {
                let idx = if *repeat { n % levels.len() } else { n };
                let images = levels
                    .get(idx)
                    .ok_or_else(|| Error::OutOfRange(format!("level {n}")))?;
                let image = images
                    .get(letter as usize)
                    .ok_or_else(|| Error::OutOfRange(format!("letter {letter} at level {n}")))?;
                Ok(image.iter().copied().take(cap).collect())
            }
            SpecKind::Exp { stats, .. } => {
                if n == 0 {
                    return Ok(vec![letter].into_iter().take(cap).collect());
                }
                let s = stats
                    .get(n - 1)
                    .ok_or_else(|| Error::OutOfRange(format!("level {n}")))?;
                let l = s.alphabet_size;
                let mut out: Vec<u64> = (0..l.min(cap as u64)).collect();
                if (out.len() as u64) < l || out.len() >= cap {
                    return Ok(out);
                }
                // Middle section: the letter's rank unranked over the
                // multiset with k-2 copies of each letter.
                let middle: Vec<u32> = match &s.enumerated_middles {
                    Some(all) => all
                        .get(letter as usize)
                        .ok_or_else(|| {
                            Error::OutOfRange(format!("letter {letter} at level {n}"))
                        })?
                        .clone(),
                    None => {
                        if s.middle_len > EXACT_MIDDLE_CAP {
                            return Err(Error::Invalid(format!(
                                "level {n} blocks are too large to expand; lower the depth"
                            )));
                        }
                        let counts = vec![s.k - 2; l as usize];
                        unrank_arrangement(&counts, &BigUint::from(letter))?
                    }
                };
                out.extend(middle.iter().map(|&x| x as u64));
                out.extend((0..l).rev());
                out.truncate(cap);
                Ok(out)
            }
        }
    }

    /// Length-`len` prefix of the limit word, by top-down expansion of the
    /// canonical seed with truncation at every level.
    pub fn prefix(&self, len: usize) -> Result<FiniteWord> {
        if len == 0 {
            return Ok(FiniteWord::empty(self.base.clone()));
        }
        // Pick the lowest level whose period covers the request.
        let mut top = 0usize;
        loop {
            let p = self.period(top)?;
            if p >= len as u64 {
                break;
            }
            top += 1;
            if let Some(max) = self.defined_levels() {
                if top > max {
                    return Err(Error::HorizonTooSmall {
                        horizon: len,
                        reason: format!(
                            "tower of {max} levels covers only {} symbols",
                            self.period(max).unwrap_or(0)
                        ),
                    });
                }
            }
        }
        // Seed of the top level: the common first letter of its images when
        // a level exists there, else the canonical letter 0.
        let seed = if self
            .defined_levels()
            .map_or(true, |max| top < max)
        {
            self.image_prefix(top, 0, 1)?[0]
        } else {
            0
        };
        let mut word = vec![seed];
        for n in (0..top).rev() {
            let p = self.period(n)? as usize;
            let cap = len.div_ceil(p.max(1));
            let mut next = Vec::with_capacity(cap * self.image_len(n)? as usize);
            'outer: for &letter in &word {
                let image = self.image_prefix(n, letter, cap - next.len().min(cap))?;
                for b in image {
                    next.push(b);
                    if next.len() >= cap {
                        break 'outer;
                    }
                }
            }
            word = next;
        }
        word.truncate(len);
        if word.len() < len {
            return Err(Error::HorizonTooSmall {
                horizon: len,
                reason: "expansion fell short".into(),
            });
        }
        let symbols = word.iter().map(|&x| x as u32).collect();
        Ok(FiniteWord::from_raw(self.base.clone(), symbols))
    }
}

fn level_letter_name(i: u64) -> String {
    i.to_string()
}

fn sample_members(
    member_count: &SizeInfo,
    k: u64,
    alphabet_size: u64,
    rng_seed: u64,
    count: usize,
) -> Result<Vec<(u64, Vec<u32>)>> {
    // Deterministic pseudorandom ranks below min(member_count, u64 range);
    // middles are only expanded when affordable.
    let middle_len = (k - 2) * alphabet_size;
    if middle_len > EXACT_MIDDLE_CAP {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let bound = match member_count {
        SizeInfo::Exact(c) => c.to_u64().unwrap_or(u64::MAX),
        SizeInfo::LogOnly(_) => u64::MAX,
    };
    let counts = vec![k - 2; alphabet_size as usize];
    (0..count)
        .map(|_| {
            let rank = rng.gen_range(0..bound);
            let middle = unrank_arrangement(&counts, &BigUint::from(rank))?;
            Ok((rank, middle))
        })
        .collect()
}

/// One level's validation outcome.
#[derive(Debug, Clone, Serialize)]
pub struct LevelCheck {
    pub level: usize,
    /// All images share one length.
    pub uniform_length: bool,
    /// All images begin with the same letter; the letter when so.
    pub left_proper: Option<u64>,
    /// Every letter occurs in every image.
    pub strongly_primitive: bool,
    /// Distinct letters have distinct images.
    pub injective_on_letters: bool,
    /// Letters actually inspected (full alphabet or a sample).
    pub letters_checked: u64,
    pub sampled_only: bool,
    /// The level maps every letter to itself; such a bookkeeping level is
    /// exempt from the properness and primitivity conditions.
    pub identity_level: bool,
}

impl LevelCheck {
    pub fn passed(&self) -> bool {
        self.uniform_length
            && self.injective_on_letters
            && (self.identity_level || (self.left_proper.is_some() && self.strongly_primitive))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ToeplitzValidation {
    pub levels: Vec<LevelCheck>,
    /// Composed letter-injectivity checks (from_level, to_level, ok).
    pub composed_injective: Vec<(usize, usize, bool)>,
    pub all_passed: bool,
}

/// Check uniform length, left-properness, strong primitivity, and
/// letter-injectivity per level up to
/// `depth`, plus injectivity of the composed letter maps on enumerable
/// alphabets.
pub fn validate_spec(spec: &ToeplitzSpec, depth: usize) -> Result<ToeplitzValidation> {
    let mut levels = Vec::new();
    let mut all = true;
    let max_level = spec.defined_levels().unwrap_or(depth + 1).min(depth + 1);
    for n in 0..max_level.min(depth + 1) {
        let check = check_level(spec, n)?;
        all = all && check.passed();
        levels.push(check);
    }
    // Composed maps on fully enumerable alphabets.
    let mut composed = Vec::new();
    for n in 0..levels.len() {
        for m in (n + 1)..=levels.len() {
            if let Ok(size) = spec.alphabet_size_u64(m) {
                if size <= 4096 {
                    let ok = composed_injective(spec, n, m, size)?;
                    all = all && ok;
                    composed.push((n, m, ok));
                }
            }
        }
    }
    Ok(ToeplitzValidation { levels, composed_injective: composed, all_passed: all })
}

fn check_level(spec: &ToeplitzSpec, n: usize) -> Result<LevelCheck> {
    let q = spec.image_len(n)?;
    let letter_count = spec.alphabet_size_u64(n).ok();
    let target_size = spec.alphabet_size_u64(n).unwrap_or(u64::MAX);
    let (letters, sampled_only): (Vec<u64>, bool) = match spec.alphabet_size(n + 1)? {
        SizeInfo::Exact(c) => match c.to_u64() {
            Some(size) if size <= 1 << 16 => ((0..size).collect(), false),
            Some(size) => {
                let mut rng = ChaCha8Rng::seed_from_u64(7 * n as u64 + 1);
                let mut picked: Vec<u64> =
                    (0..64).map(|_| rng.gen_range(0..size)).collect();
                picked.push(0);
                picked.sort_unstable();
                picked.dedup();
                (picked, true)
            }
            None => (vec![0, 1, 2, 3], true),
        },
        SizeInfo::LogOnly(_) => (vec![0, 1, 2, 3], true),
    };
    let mut uniform = true;
    let mut first_letters = Vec::new();
    let mut primitive = true;
    let mut seen_images: std::collections::HashSet<Vec<u64>> = Default::default();
    let mut injective = true;
    let mut identity = true;
    for &letter in &letters {
        let image = spec.image_prefix(n, letter, usize::MAX)?;
        identity = identity && image == [letter];
        uniform = uniform && image.len() as u64 == q;
        if let Some(&f) = image.first() {
            first_letters.push(f);
        }
        if let Some(size) = letter_count {
            let mut seen = vec![false; size as usize];
            for &b in &image {
                if (b as usize) < seen.len() {
                    seen[b as usize] = true;
                }
            }
            primitive = primitive && seen.iter().all(|&x| x);
        } else {
            primitive = false;
        }
        injective = injective && seen_images.insert(image);
    }
    let left_proper = match first_letters.split_first() {
        Some((&f, rest)) if rest.iter().all(|&g| g == f) && f < target_size => Some(f),
        _ => None,
    };
    Ok(LevelCheck {
        level: n,
        uniform_length: uniform,
        left_proper,
        strongly_primitive: primitive,
        injective_on_letters: injective,
        letters_checked: letters.len() as u64,
        sampled_only,
        identity_level: identity,
    })
}

fn composed_injective(spec: &ToeplitzSpec, n: usize, m: usize, size: u64) -> Result<bool> {
    let mut seen: std::collections::HashSet<Vec<u64>> = Default::default();
    for letter in 0..size {
        // Expand letter of level m down to level n.
        let mut word = vec![letter];
        for j in (n..m).rev() {
            let mut next = Vec::new();
            for &a in &word {
                next.extend(spec.image_prefix(j, a, usize::MAX)?);
            }
            word = next;
        }
        if !seen.insert(word) {
            return Ok(false);
        }
    }
    Ok(true)
}
