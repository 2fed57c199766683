//! Incidence matrix and letter classification for endomorphisms.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::morphisms::substitution::Substitution;

/// Witness that iterated image lengths stay within a bounded ratio.
#[derive(Debug, Clone)]
pub struct QuasiUniformity {
    /// Largest observed `|t^n(a)| / |t^n(b)|` over the scanned powers.
    pub observed_sup: f64,
    /// Number of powers scanned.
    pub horizon: usize,
    /// Whether the (argmax, argmin) pattern of the length vectors entered a
    /// cycle inside the scanned range, which certifies the scan saw a full
    /// period of the ratio recursion.
    pub ratio_cycle_detected: bool,
}

#[derive(Debug, Clone)]
pub struct IncidenceData {
    /// `matrix[b][a]` counts occurrences of letter `b` in the image of `a`.
    pub matrix: Vec<Vec<BigUint>>,
    /// Letters with bounded iterated image lengths.
    pub bounded_letters: Vec<u32>,
    /// Complement: letters whose iterated image lengths diverge.
    pub growing_letters: Vec<u32>,
    pub primitive: bool,
    /// Some power's images restricted to growing letters contain every
    /// growing letter.
    pub quasi_primitive: bool,
    pub quasi_uniform: Option<QuasiUniformity>,
}

impl IncidenceData {
    pub fn is_growing(&self) -> bool {
        self.bounded_letters.is_empty()
    }
}

/// Number of powers scanned by the quasi-uniformity ratio certificate.
pub const QUASI_UNIFORM_HORIZON: usize = 64;

/// Compute the incidence matrix, classify letters as bounded/growing,
/// decide primitivity and quasi-primitivity, and scan for quasi-uniformity.
/// Refuses erasing substitutions.
pub fn incidence(sub: &Substitution) -> Result<IncidenceData> {
    incidence_with_horizon(sub, QUASI_UNIFORM_HORIZON)
}

pub fn incidence_with_horizon(sub: &Substitution, horizon: usize) -> Result<IncidenceData> {
    if !sub.is_endomorphism() {
        return Err(Error::Invalid(
            "incidence data requires an endomorphism".into(),
        ));
    }
    sub.require_nonerasing()?;
    let d = sub.source_alphabet().size();

    let mut matrix = vec![vec![BigUint::zero(); d]; d];
    for a in 0..d as u32 {
        for &b in sub.image(a) {
            matrix[b as usize][a as usize] += 1u32;
        }
    }

    let bounded = bounded_letters(sub);
    let bounded_set: Vec<bool> = (0..d as u32).map(|a| bounded.contains(&a)).collect();
    let growing: Vec<u32> = (0..d as u32).filter(|a| !bounded_set[*a as usize]).collect();

    // Boolean occurrence relation and its transitive powers. The Wielandt
    // bound (d-1)^2 + 1 is sound and complete for primitivity.
    let occurs: Vec<Vec<bool>> = (0..d)
        .map(|a| {
            let mut row = vec![false; d];
            for &b in sub.image(a as u32) {
                row[b as usize] = true;
            }
            row
        })
        .collect();
    let wielandt = (d - 1) * (d - 1) + 1;
    let mut primitive = false;
    let mut quasi_primitive = growing.is_empty();
    let mut reach = occurs.clone();
    for _ in 1..=wielandt {
        if reach.iter().all(|row| row.iter().all(|&x| x)) {
            primitive = true;
        }
        if !quasi_primitive
            && growing
                .iter()
                .all(|&a| growing.iter().all(|&b| reach[a as usize][b as usize]))
        {
            quasi_primitive = true;
        }
        if primitive && quasi_primitive {
            break;
        }
        reach = bool_mul(&reach, &occurs);
    }
    if primitive {
        quasi_primitive = true;
    }

    let quasi_uniform = quasi_uniformity_scan(sub, horizon);

    let data = IncidenceData {
        matrix,
        bounded_letters: bounded,
        growing_letters: growing,
        primitive,
        quasi_primitive,
        quasi_uniform: Some(quasi_uniform),
    };
    validate_classification(sub, &data)?;
    Ok(data)
}

/// Letter classification through the occurrence digraph: a letter is
/// bounded iff every letter reachable from it that lies on a cycle has
/// image length exactly 1. For nonerasing substitutions this coincides with
/// bounded iterated image lengths.
fn bounded_letters(sub: &Substitution) -> Vec<u32> {
    let d = sub.source_alphabet().size();
    let mut reach: Vec<Vec<bool>> = (0..d)
        .map(|a| {
            let mut row = vec![false; d];
            for &b in sub.image(a as u32) {
                row[b as usize] = true;
            }
            row
        })
        .collect();
    // Transitive closure (Floyd-Warshall on booleans).
    for k in 0..d {
        for i in 0..d {
            if reach[i][k] {
                for j in 0..d {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    let on_cycle: Vec<bool> = (0..d).map(|a| reach[a][a]).collect();
    (0..d as u32)
        .filter(|&a| {
            let mut ok = true;
            for c in 0..d {
                let reachable = a as usize == c || reach[a as usize][c];
                if reachable && on_cycle[c] && sub.image_len(c as u32) != 1 {
                    ok = false;
                    break;
                }
            }
            ok
        })
        .collect()
}

fn bool_mul(x: &[Vec<bool>], y: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let d = x.len();
    (0..d)
        .map(|i| {
            let mut row = vec![false; d];
            for k in 0..d {
                if x[i][k] {
                    for (j, cell) in row.iter_mut().enumerate() {
                        *cell = *cell || y[k][j];
                    }
                }
            }
            row
        })
        .collect()
}

/// Iterated image lengths via the length-vector recursion, with big
/// integers so deep powers cannot overflow.
pub fn iterated_lengths(sub: &Substitution, n: usize) -> Vec<BigUint> {
    let d = sub.source_alphabet().size();
    let mut lens: Vec<BigUint> = vec![BigUint::one(); d];
    for _ in 0..n {
        lens = (0..d as u32)
            .map(|a| sub.image(a).iter().map(|&b| lens[b as usize].clone()).sum())
            .collect();
    }
    lens
}

fn quasi_uniformity_scan(sub: &Substitution, horizon: usize) -> QuasiUniformity {
    let d = sub.source_alphabet().size();
    let mut lens: Vec<BigUint> = vec![BigUint::one(); d];
    let mut sup = 1.0f64;
    let mut extremes = Vec::with_capacity(horizon);
    for _ in 0..horizon {
        lens = (0..d as u32)
            .map(|a| sub.image(a).iter().map(|&b| lens[b as usize].clone()).sum())
            .collect();
        let max_pos = (0..d).max_by(|&i, &j| lens[i].cmp(&lens[j])).expect("nonempty");
        let min_pos = (0..d).min_by(|&i, &j| lens[i].cmp(&lens[j])).expect("nonempty");
        sup = sup.max(big_ratio(&lens[max_pos], &lens[min_pos]));
        extremes.push((max_pos, min_pos));
    }
    QuasiUniformity {
        observed_sup: sup,
        horizon,
        ratio_cycle_detected: has_period(&extremes),
    }
}

fn big_ratio(num: &BigUint, den: &BigUint) -> f64 {
    // Scale down so huge powers stay representable.
    let shift = num.bits().max(den.bits()).saturating_sub(52);
    let n: f64 = u64::try_from(num >> shift).map(|v| v as f64).unwrap_or(f64::MAX);
    let d: f64 = u64::try_from(den >> shift).map(|v| v as f64).unwrap_or(f64::MAX);
    if d == 0.0 {
        f64::INFINITY
    } else {
        n / d
    }
}

/// Does the tail of the sequence repeat with some period <= len/4?
fn has_period<T: PartialEq>(xs: &[T]) -> bool {
    let len = xs.len();
    if len < 8 {
        return false;
    }
    let tail = &xs[len / 2..];
    (1..=tail.len() / 2).any(|p| tail.iter().zip(tail.iter().skip(p)).all(|(a, b)| a == b))
}

/// Sanity-check the digraph classification against iterated lengths:
/// bounded letters have constant `|t^n(a)|` on `n` in `[d, 3d]`, growing
/// letters strictly grow between `d` and `3d`.
fn validate_classification(sub: &Substitution, data: &IncidenceData) -> Result<()> {
    let d = sub.source_alphabet().size();
    let mut lens = iterated_lengths(sub, d);
    let at_d = lens.clone();
    for _ in d..3 * d {
        lens = (0..d as u32)
            .map(|a| sub.image(a).iter().map(|&b| lens[b as usize].clone()).sum())
            .collect();
        for &a in &data.bounded_letters {
            if lens[a as usize] != at_d[a as usize] {
                return Err(Error::Invalid(format!(
                    "letter '{}' classified bounded but lengths changed",
                    sub.source_alphabet().name(a)
                )));
            }
        }
    }
    for &a in &data.growing_letters {
        if lens[a as usize] <= at_d[a as usize] {
            return Err(Error::Invalid(format!(
                "letter '{}' classified growing but lengths stalled",
                sub.source_alphabet().name(a)
            )));
        }
    }
    Ok(())
}
