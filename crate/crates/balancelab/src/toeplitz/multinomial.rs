//! Exact and asymptotic counting of balanced letter arrangements.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact multinomial coefficient `(d k)! / (k!)^d`: the number of words of
/// length `d k` using each of `d` letters exactly `k` times.
pub fn multinomial(d: u64, k: u64) -> Result<BigUint> {
    if d == 0 {
        return Err(Error::Invalid("need at least one letter".into()));
    }
    arrangement_count(&vec![k; d as usize])
}

/// Number of distinct arrangements of a multiset with the given letter
/// counts: `(sum counts)! / prod counts_i!`.
pub fn arrangement_count(counts: &[u64]) -> Result<BigUint> {
    let total: u64 = counts.iter().sum();
    if total > 200_000 {
        return Err(Error::Invalid(format!(
            "arrangement count of {total} symbols is too large to compute exactly"
        )));
    }
    let mut result = BigUint::one();
    let mut n = BigUint::zero();
    for &c in counts {
        for i in 1..=c {
            n += 1u32;
            result = result * &n / BigUint::from(i);
        }
    }
    Ok(result)
}

/// Logarithm (natural) of the multinomial coefficient by Stirling's series:
/// `d k ln d + ln(d)/2 - (d-1)/2 ln(2 pi k) + (1 - d^2)/(12 d k)`. The last
/// term is the leading correction of the series; without it the estimate
/// misses small cases by several percent.
pub fn stirling_log_estimate(d: u64, k: u64) -> Result<f64> {
    if d == 0 {
        return Err(Error::Invalid("need at least one letter".into()));
    }
    if k == 0 {
        return Ok(0.0);
    }
    let df = d as f64;
    let kf = k as f64;
    Ok(df * kf * df.ln() + 0.5 * df.ln() - (df - 1.0) / 2.0 * (2.0 * std::f64::consts::PI * kf).ln()
        + (1.0 - df * df) / (12.0 * df * kf))
}

/// Lexicographic rank-to-arrangement map for multiset permutations: returns
/// the `rank`-th (0-based) word with the given letter counts, letters in
/// ascending order.
pub fn unrank_arrangement(counts: &[u64], rank: &BigUint) -> Result<Vec<u32>> {
    let mut remaining: Vec<u64> = counts.to_vec();
    let mut total: u64 = remaining.iter().sum();
    let mut arrangements = arrangement_count(&remaining)?;
    if rank >= &arrangements {
        return Err(Error::OutOfRange(format!("rank {rank} of {arrangements}")));
    }
    let mut rank = rank.clone();
    let mut out = Vec::with_capacity(total as usize);
    while total > 0 {
        for letter in 0..remaining.len() {
            if remaining[letter] == 0 {
                continue;
            }
            // Arrangements starting with this letter.
            let with_first = &arrangements * remaining[letter] / BigUint::from(total);
            if rank < with_first {
                out.push(letter as u32);
                remaining[letter] -= 1;
                total -= 1;
                arrangements = with_first;
                break;
            }
            rank -= with_first;
        }
    }
    debug_assert!(rank.is_zero());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_multinomials() {
        assert_eq!(multinomial(2, 2).unwrap(), BigUint::from(6u32));
        assert_eq!(multinomial(1, 7).unwrap(), BigUint::from(1u32));
        assert_eq!(multinomial(2, 10).unwrap(), BigUint::from(184_756u32));
        assert_eq!(multinomial(3, 5).unwrap(), BigUint::from(756_756u32));
    }

    #[test]
    fn unrank_enumerates_lexicographically() {
        // counts (2, 2): 0011, 0101, 0110, 1001, 1010, 1100
        let expected = [
            vec![0, 0, 1, 1],
            vec![0, 1, 0, 1],
            vec![0, 1, 1, 0],
            vec![1, 0, 0, 1],
            vec![1, 0, 1, 0],
            vec![1, 1, 0, 0],
        ];
        for (i, want) in expected.iter().enumerate() {
            let got = unrank_arrangement(&[2, 2], &BigUint::from(i)).unwrap();
            assert_eq!(&got, want);
        }
    }

    #[test]
    fn estimate_tracks_exact_value() {
        for (d, k) in [(2u64, 10u64), (3, 5), (4, 6)] {
            let exact: f64 = multinomial(d, k)
                .unwrap()
                .to_string()
                .parse()
                .unwrap();
            let estimate = stirling_log_estimate(d, k).unwrap().exp();
            let rel = (estimate - exact).abs() / exact;
            assert!(rel < 0.02, "relative error {rel} for ({d}, {k})");
        }
    }
}
