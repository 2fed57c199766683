//! Characteristic Sturmian words, built two independent ways: by
//! telescoping the alternating level substitutions driven by continued
//! fraction quotients, and by coding a two-interval exchange in exact
//! rational arithmetic over a convergent.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::sadic::congenial::{CongenialSequence, Level};
use crate::words::alphabet::Alphabet;
use crate::words::word::FiniteWord;

/// Positive partial quotients, optionally with an infinitely repeated
/// period. Values denote `[0; a1, a2, ...]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFraction {
    pre: Vec<u64>,
    period: Vec<u64>,
}

impl ContinuedFraction {
    pub fn new(pre: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        if pre.is_empty() && period.is_empty() {
            return Err(Error::Invalid("continued fraction needs quotients".into()));
        }
        if pre.iter().chain(&period).any(|&q| q == 0) {
            return Err(Error::Invalid("partial quotients must be positive".into()));
        }
        Ok(ContinuedFraction { pre, period })
    }

    pub fn finite(quotients: Vec<u64>) -> Result<Self> {
        Self::new(quotients, Vec::new())
    }

    pub fn periodic(pre: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Invalid("period must be nonempty".into()));
        }
        Self::new(pre, period)
    }

    /// Parse `"1 2 (3 4)"` or with a leading `cf:` tag; parenthesized part
    /// repeats forever.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let text = text.strip_prefix("cf:").unwrap_or(text).trim();
        let (pre_text, period_text) = match text.find('(') {
            Some(open) => {
                let close = text
                    .rfind(')')
                    .ok_or_else(|| Error::Parse("unclosed '(' in quotients".into()))?;
                (&text[..open], &text[open + 1..close])
            }
            None => (text, ""),
        };
        let parse_list = |s: &str| -> Result<Vec<u64>> {
            s.split_whitespace()
                .map(|tok| {
                    tok.parse::<u64>()
                        .map_err(|_| Error::Parse(format!("bad quotient '{tok}'")))
                })
                .collect()
        };
        Self::new(parse_list(pre_text)?, parse_list(period_text)?)
    }

    /// The i-th quotient (0-based: `quotient(0)` is a1), `None` beyond a
    /// finite expansion.
    pub fn quotient(&self, i: usize) -> Option<u64> {
        if i < self.pre.len() {
            Some(self.pre[i])
        } else if self.period.is_empty() {
            None
        } else {
            Some(self.period[(i - self.pre.len()) % self.period.len()])
        }
    }

    pub fn is_infinite(&self) -> bool {
        !self.period.is_empty()
    }

    /// Number of stored quotients for finite expansions.
    pub fn finite_depth(&self) -> Option<usize> {
        if self.period.is_empty() {
            Some(self.pre.len())
        } else {
            None
        }
    }

    /// Convergent numerator/denominator of `[0; a1..a_depth]`.
    pub fn convergent(&self, depth: usize) -> Result<(BigUint, BigUint)> {
        if depth == 0 {
            return Err(Error::Invalid("convergent depth must be positive".into()));
        }
        let (mut p_prev, mut p) = (BigUint::one(), BigUint::zero());
        let (mut q_prev, mut q) = (BigUint::zero(), BigUint::one());
        for i in 0..depth {
            let a = self
                .quotient(i)
                .ok_or_else(|| Error::OutOfRange(format!("quotient {} of {}", i + 1, self.pre.len())))?;
            let p_next = a * &p + &p_prev;
            let q_next = a * &q + &q_prev;
            p_prev = std::mem::replace(&mut p, p_next);
            q_prev = std::mem::replace(&mut q, q_next);
        }
        Ok((p, q))
    }

    /// The slope whose rotation coding matches the level construction for
    /// these quotients: `[0; a1+1, a2, a3, ...]`.
    pub fn slope_for_rotation(&self) -> ContinuedFraction {
        let mut pre = self.pre.clone();
        let mut period = self.period.clone();
        if pre.is_empty() {
            pre.push(period[0] + 1);
            period.rotate_left(1);
        } else {
            pre[0] += 1;
        }
        ContinuedFraction { pre, period }
    }
}

impl std::fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let pre: Vec<String> = self.pre.iter().map(u64::to_string).collect();
        write!(f, "{}", pre.join(" "))?;
        if !self.period.is_empty() {
            let per: Vec<String> = self.period.iter().map(u64::to_string).collect();
            write!(f, "{}({})", if pre.is_empty() { "" } else { " " }, per.join(" "))?;
        }
        Ok(())
    }
}

fn narrow_substitution(alphabet: &std::sync::Arc<Alphabet>) -> crate::morphisms::substitution::Substitution {
    // 0 -> 0, 1 -> 01
    let images = vec![
        FiniteWord::from_raw(alphabet.clone(), vec![0]),
        FiniteWord::from_raw(alphabet.clone(), vec![0, 1]),
    ];
    crate::morphisms::substitution::Substitution::new(alphabet.clone(), alphabet.clone(), images)
        .expect("static images")
}

fn wide_substitution(alphabet: &std::sync::Arc<Alphabet>) -> crate::morphisms::substitution::Substitution {
    // 0 -> 10, 1 -> 1
    let images = vec![
        FiniteWord::from_raw(alphabet.clone(), vec![1, 0]),
        FiniteWord::from_raw(alphabet.clone(), vec![1]),
    ];
    crate::morphisms::substitution::Substitution::new(alphabet.clone(), alphabet.clone(), images)
        .expect("static images")
}

/// The congenial sequence generating the characteristic Sturmian word for
/// the given quotients: level n applies the parity-n binary substitution
/// raised to the (n+1)-th quotient, seeded 0/1 alternately.
pub fn sturmian_sadic(cf: &ContinuedFraction) -> Result<CongenialSequence> {
    let alphabet = Alphabet::from_chars("01");
    let even = narrow_substitution(&alphabet);
    let odd = wide_substitution(&alphabet);
    let finite_depth = cf.finite_depth();
    let cf = cf.clone();
    let make_level = move |n: usize| -> Result<Level> {
        let quotient = cf
            .quotient(n)
            .ok_or_else(|| Error::OutOfRange(format!("level {n}: quotients exhausted")))?;
        let base = if n % 2 == 0 { &even } else { &odd };
        let sub = base.power(quotient as usize)?;
        Level::new(sub, (n % 2) as u32)
    };
    match finite_depth {
        Some(depth) => {
            let levels = (0..depth).map(&make_level).collect::<Result<Vec<_>>>()?;
            CongenialSequence::finite(levels)
        }
        None => Ok(CongenialSequence::from_fn(
            make_level,
            crate::sadic::congenial::DEFAULT_LEVEL_CAP,
        )),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalVariant {
    /// Intervals closed on the left, open on the right.
    LeftClosed,
    /// Intervals open on the left, closed on the right.
    RightClosed,
}

/// Forward itinerary of the two-interval exchange with rational angle
/// `alpha = p/q` and rational intercept `rho`, coded 0 on the wider
/// interval. Evaluated exactly: the point after n steps is
/// `rho + (n+1) alpha  (mod 1)`, compared against `1 - alpha`.
pub fn sturmian_rotation(
    alpha: (&BigUint, &BigUint),
    rho: (&BigInt, &BigUint),
    variant: IntervalVariant,
    len: usize,
) -> Result<FiniteWord> {
    let (p, q) = alpha;
    let (r, s) = rho;
    if p.is_zero() || p >= q {
        return Err(Error::Invalid("angle must lie strictly between 0 and 1".into()));
    }
    if s.is_zero() {
        return Err(Error::Invalid("intercept denominator must be positive".into()));
    }
    // rho must lie in [-alpha, 1-alpha]: -p*s <= r*q <= (q-p)*s.
    let rq = r * BigInt::from(q.clone());
    let ps = BigInt::from(p * s);
    let qps = BigInt::from((q - p) * s);
    if rq < -&ps || rq > qps {
        return Err(Error::OutOfRange(format!(
            "intercept {}/{} outside [-alpha, 1-alpha]",
            r, s
        )));
    }

    let alphabet = Alphabet::from_chars("01");
    if len == 0 {
        return Ok(FiniteWord::empty(alphabet));
    }
    // Work over the common denominator D = q*s; the orbit numerator starts
    // at (r*q + p*s) mod D and advances by p*s each step.
    let modulus = BigInt::from(q * s);
    let step = ps.clone();
    let zero_bound = qps; // numerator of (1 - alpha) over D
    let mut position = (rq + &step) % &modulus;
    if position < BigInt::zero() {
        position += &modulus;
    }
    let mut symbols = Vec::with_capacity(len);
    for _ in 0..len {
        let is_zero = match variant {
            IntervalVariant::LeftClosed => position < zero_bound,
            IntervalVariant::RightClosed => {
                let effective = if position.is_zero() { modulus.clone() } else { position.clone() };
                effective <= zero_bound
            }
        };
        symbols.push(if is_zero { 0 } else { 1 });
        position += &step;
        if position >= modulus {
            position -= &modulus;
        }
    }
    Ok(FiniteWord::from_raw(alphabet, symbols))
}

/// Rotation coding of the characteristic word (intercept 0) for a slope
/// given by a continued fraction, evaluated at the stated convergent depth.
pub fn rotation_word_for_slope(
    slope: &ContinuedFraction,
    depth: usize,
    variant: IntervalVariant,
    len: usize,
) -> Result<FiniteWord> {
    let (p, q) = slope.convergent(depth)?;
    let zero = BigInt::zero();
    let one = BigUint::one();
    sturmian_rotation((&p, &q), (&zero, &one), variant, len)
}
