//! Decisiveness: when the first k letters following each image of a
//! substitution are forced by the preceding letter, short-pattern
//! occurrence counts in the image word become a letterwise sum.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::morphisms::substitution::Substitution;
use crate::words::scan::count_occurrences_raw;
use crate::words::source::WordSource;
use crate::words::word::FiniteWord;

/// A verified forecast map: for every letter `a`, a length-k word that
/// prefixes the image of every letter that may follow `a`.
#[derive(Debug, Clone)]
pub struct DecisivenessCertificate {
    pub order: usize,
    /// `forecast[a]` over the target alphabet, one entry per source letter.
    pub forecast: Vec<FiniteWord>,
}

impl DecisivenessCertificate {
    /// Prefix of the forecast used for patterns of length `u_len`.
    pub fn forecast_for(&self, letter: u32, u_len: usize) -> &[u32] {
        &self.forecast[letter as usize].symbols()[..u_len - 1]
    }
}

/// Try to build an order-k certificate for `sub` against the set of
/// length-2 factors of the reference word. The forecast is forced: it must
/// be the common length-k prefix of the images of all successors, so the
/// construction either succeeds uniquely or returns `None`.
pub fn decisiveness_certificate(
    sub: &Substitution,
    factors2: &HashSet<FiniteWord>,
    k: usize,
) -> Result<Option<DecisivenessCertificate>> {
    if k == 0 {
        return Err(Error::Invalid("decisiveness order must be positive".into()));
    }
    let d = sub.source_alphabet().size();
    for f in factors2 {
        if f.len() != 2 {
            return Err(Error::Invalid(format!("'{f}' is not a length-2 factor")));
        }
    }
    let mut successors: Vec<Vec<u32>> = vec![Vec::new(); d];
    for f in factors2 {
        successors[f.symbols()[0] as usize].push(f.symbols()[1]);
    }
    let mut forecast = Vec::with_capacity(d);
    for a in 0..d {
        let succ = &successors[a];
        let choice: Option<Vec<u32>> = if succ.is_empty() {
            // Unconstrained letter: any image prefix of length k serves.
            (0..d as u32)
                .map(|b| sub.image(b))
                .find(|im| im.len() >= k)
                .map(|im| im[..k].to_vec())
        } else {
            let mut common: Option<Vec<u32>> = None;
            for &b in succ {
                let image = sub.image(b);
                if image.len() < k {
                    return Ok(None);
                }
                match &common {
                    None => common = Some(image[..k].to_vec()),
                    Some(c) if c.as_slice() == &image[..k] => {}
                    Some(_) => return Ok(None),
                }
            }
            common
        };
        match choice {
            Some(word) => forecast.push(FiniteWord::from_raw(
                sub.target_alphabet().clone(),
                word,
            )),
            None => return Ok(None),
        }
    }
    Ok(Some(DecisivenessCertificate { order: k, forecast }))
}

/// Per-letter occurrence counts of the pattern `u` in each image extended
/// by the first `|u| - 1` forecast letters. Requires `|u| <= k + 1`.
pub fn pattern_counts(
    cert: &DecisivenessCertificate,
    sub: &Substitution,
    u: &FiniteWord,
) -> Result<Vec<u64>> {
    if u.is_empty() {
        return Err(Error::EmptyPattern);
    }
    if u.len() > cert.order + 1 {
        return Err(Error::OutOfRange(format!(
            "pattern length {} exceeds order + 1 = {}",
            u.len(),
            cert.order + 1
        )));
    }
    let d = sub.source_alphabet().size() as u32;
    Ok((0..d)
        .map(|a| {
            let mut extended = sub.image(a).to_vec();
            extended.extend_from_slice(cert.forecast_for(a, u.len()));
            count_occurrences_raw(&extended, u.symbols()) as u64
        })
        .collect())
}

/// Verify the seam identity at one site: occurrences of `u` in the image
/// of `w = x[i, i+w_len)` extended by the next `|u| - 1` letters of the
/// image word equal the letterwise sum of pattern counts over `w`.
pub fn seam_identity_check(
    cert: &DecisivenessCertificate,
    sub: &Substitution,
    source: &WordSource,
    position: usize,
    w_len: usize,
    u: &FiniteWord,
) -> Result<bool> {
    if w_len == 0 {
        return Err(Error::EmptyWord);
    }
    let counts = pattern_counts(cert, sub, u)?;
    // Enough of x to expand the extension beyond the image of w.
    let slack = u.len().max(2);
    let prefix = source.prefix(position + w_len + slack)?;
    let w = prefix.slice(position, position + w_len);

    let rhs: u64 = w
        .letter_counts()
        .iter()
        .zip(&counts)
        .map(|(&n, &q)| n * q)
        .sum();

    let image_w = sub.apply_raw(w.symbols());
    let mut extended = image_w;
    let mut tail = Vec::new();
    for &a in &prefix.symbols()[position + w_len..] {
        tail.extend_from_slice(sub.image(a));
        if tail.len() >= u.len() - 1 {
            break;
        }
    }
    if tail.len() < u.len() - 1 {
        return Err(Error::HorizonTooSmall {
            horizon: prefix.len(),
            reason: "cannot materialize the seam extension".into(),
        });
    }
    extended.extend_from_slice(&tail[..u.len() - 1]);
    let lhs = count_occurrences_raw(&extended, u.symbols()) as u64;
    Ok(lhs == rhs)
}

/// Predicted frequency of `u` in the image word from level letter
/// frequencies: sum of `nu_a q(u, a)` over the mean image length.
pub fn frequency_from_level(
    cert: &DecisivenessCertificate,
    sub: &Substitution,
    nu: &[f64],
    u: &FiniteWord,
) -> Result<f64> {
    let d = sub.source_alphabet().size();
    if nu.len() != d {
        return Err(Error::Invalid(format!(
            "frequency vector has {} entries, alphabet has {d}",
            nu.len()
        )));
    }
    let counts = pattern_counts(cert, sub, u)?;
    let numerator: f64 = nu
        .iter()
        .zip(&counts)
        .map(|(&f, &q)| f * q as f64)
        .sum();
    let denominator: f64 = nu
        .iter()
        .enumerate()
        .map(|(a, &f)| f * sub.image_len(a as u32) as f64)
        .sum();
    if denominator <= 0.0 {
        return Err(Error::Invalid("degenerate mean image length".into()));
    }
    Ok(numerator / denominator)
}
