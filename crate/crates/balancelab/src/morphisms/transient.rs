//! Splitting a fixed point into a transient prefix and a recurrent core.
//!
//! For a fixed point x of an endomorphism, the letters occurring infinitely
//! often form a set R with images inside R*. Writing u for the prefix of x
//! before the first all-recurrent tail position and v for the word with
//! tau(u) = uv, the extended substitution on R plus a fresh marker letter
//! reconstructs x through the projection sending the marker to u.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::morphisms::substitution::Substitution;
use crate::words::alphabet::Alphabet;
use crate::words::word::FiniteWord;

#[derive(Debug, Clone)]
pub struct TransientDecomposition {
    /// Letters judged recurrent (occurring infinitely often).
    pub recurrent: Vec<u32>,
    /// Transient prefix u of the fixed point (empty when already recurrent).
    pub transient_prefix: FiniteWord,
    /// v with tau(u) = u v.
    pub expansion: FiniteWord,
    /// Substitution over R + marker: marker -> marker v, a -> tau(a).
    pub extended: Substitution,
    /// Projection: marker -> u, a -> a.
    pub projection: Substitution,
    /// Marker symbol in the extended alphabet, when a marker was needed.
    pub marker: Option<u32>,
    /// True when every letter already recurs; the decomposition degenerates
    /// to the identity arrangement.
    pub already_recurrent: bool,
}

/// Default prefix length scanned for recurrent letters.
pub const TRANSIENT_SCAN_LEN: usize = 10_000;

pub fn transient_decomposition(sub: &Substitution, seed: u32) -> Result<TransientDecomposition> {
    transient_decomposition_with_scan(sub, seed, TRANSIENT_SCAN_LEN)
}

pub fn transient_decomposition_with_scan(
    sub: &Substitution,
    seed: u32,
    scan_len: usize,
) -> Result<TransientDecomposition> {
    sub.require_nonerasing()?;
    let alphabet = sub.source_alphabet().clone();
    let prefix = sub.fixed_point_prefix(seed, scan_len)?;
    let symbols = prefix.symbols();

    // Candidate recurrent set: letters seen beyond the midpoint, shrunk to
    // the largest subset closed under the substitution.
    let mut candidate = vec![false; alphabet.size()];
    for &a in &symbols[symbols.len() / 2..] {
        candidate[a as usize] = true;
    }
    loop {
        let mut changed = false;
        for a in 0..alphabet.size() as u32 {
            if candidate[a as usize]
                && sub.image(a).iter().any(|&b| !candidate[b as usize])
            {
                candidate[a as usize] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let recurrent: Vec<u32> =
        (0..alphabet.size() as u32).filter(|&a| candidate[a as usize]).collect();
    if recurrent.is_empty() {
        return Err(Error::Invalid(
            "no closed recurrent letter set found at this scan length".into(),
        ));
    }

    // Stabilization index: all prefix letters from i on lie in R.
    let stabilization = symbols
        .iter()
        .rposition(|&a| !candidate[a as usize])
        .map(|i| i + 1)
        .unwrap_or(0);
    // Tail membership must hold over the scanned prefix; a violation in the
    // second half means the closure computation was fooled.
    if stabilization > symbols.len() / 2 {
        return Err(Error::Invalid(format!(
            "non-recurrent letter still occurs at position {} of a {}-symbol scan",
            stabilization - 1,
            symbols.len()
        )));
    }

    if stabilization == 0 {
        // Already recurrent; by convention u = v = empty, no marker.
        let identity = Substitution::identity(alphabet.clone());
        return Ok(TransientDecomposition {
            recurrent,
            transient_prefix: FiniteWord::empty(alphabet.clone()),
            expansion: FiniteWord::empty(alphabet.clone()),
            extended: sub.clone(),
            projection: identity,
            marker: None,
            already_recurrent: true,
        });
    }

    let transient_prefix = prefix.slice(0, stabilization);
    let expanded = sub.apply(&transient_prefix)?;
    if expanded.len() < transient_prefix.len()
        || expanded.symbols()[..stabilization] != *transient_prefix.symbols()
    {
        return Err(Error::Invalid(
            "transient prefix is not a prefix of its own image".into(),
        ));
    }
    let expansion = expanded.slice(stabilization, expanded.len());
    if expansion.is_empty() {
        return Err(Error::Invalid(
            "expansion word is empty for a nonempty transient prefix".into(),
        ));
    }
    if expansion.symbols().iter().any(|&b| !candidate[b as usize]) {
        return Err(Error::Invalid(
            "expansion word leaves the recurrent letter set".into(),
        ));
    }

    // Extended alphabet: recurrent letters keep their names, plus a marker.
    let mut names: Vec<String> =
        recurrent.iter().map(|&a| alphabet.name(a).to_string()).collect();
    let marker_name = pick_marker_name(&alphabet);
    names.push(marker_name);
    let extended_alphabet = Alphabet::new(names)?;
    let to_extended: std::collections::HashMap<u32, u32> = recurrent
        .iter()
        .enumerate()
        .map(|(i, &a)| (a, i as u32))
        .collect();
    let marker = recurrent.len() as u32;

    let relabel = |word: &[u32]| -> Vec<u32> {
        word.iter().map(|a| to_extended[a]).collect()
    };
    let mut extended_images: Vec<FiniteWord> = recurrent
        .iter()
        .map(|&a| FiniteWord::from_raw(extended_alphabet.clone(), relabel(sub.image(a))))
        .collect();
    let mut marker_image = vec![marker];
    marker_image.extend(relabel(expansion.symbols()));
    extended_images.push(FiniteWord::from_raw(extended_alphabet.clone(), marker_image));
    let extended =
        Substitution::new(extended_alphabet.clone(), extended_alphabet.clone(), extended_images)?;

    let mut projection_images: Vec<FiniteWord> = recurrent
        .iter()
        .map(|&a| FiniteWord::from_raw(alphabet.clone(), vec![a]))
        .collect();
    projection_images.push(transient_prefix.clone());
    let projection = Substitution::new(extended_alphabet, alphabet, projection_images)?;

    let decomposition = TransientDecomposition {
        recurrent,
        transient_prefix,
        expansion,
        extended,
        projection,
        marker: Some(marker),
        already_recurrent: false,
    };
    validate(sub, seed, &decomposition)?;
    Ok(decomposition)
}

fn pick_marker_name(alphabet: &Arc<Alphabet>) -> String {
    for candidate in ["*", "#", "@", "%"] {
        if !alphabet.contains(candidate) {
            return candidate.to_string();
        }
    }
    let mut name = "*".to_string();
    while alphabet.contains(&name) {
        name.push('*');
    }
    name
}

/// Check the commuting identity projection(extended(a)) = sub(projection(a))
/// letterwise, and the reconstruction on a materialized prefix.
fn validate(sub: &Substitution, seed: u32, dec: &TransientDecomposition) -> Result<()> {
    let ext_alphabet = dec.extended.source_alphabet();
    for a in 0..ext_alphabet.size() as u32 {
        let lhs = dec.projection.apply(&dec.extended.image_word(a))?;
        let rhs = sub.apply(&dec.projection.image_word(a))?;
        if lhs != rhs {
            return Err(Error::Invalid(format!(
                "projection does not intertwine on '{}'",
                ext_alphabet.name(a)
            )));
        }
    }
    let check_len = 4096;
    let marker = dec.marker.expect("validated only with marker");
    let reconstructed =
        dec.projection.apply(&dec.extended.fixed_point_prefix(marker, check_len)?)?;
    let original = sub.fixed_point_prefix(seed, check_len)?;
    if reconstructed.symbols()[..check_len] != *original.symbols() {
        return Err(Error::Invalid("reconstructed prefix differs".into()));
    }
    Ok(())
}
