//! The built-in non-recurrent balanced example and the closed-form
//! recurrence function of the tribonacci fixed point.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::ExecMode;
use crate::morphisms::substitution::Substitution;
use crate::numeration::dfao::{dfao_from_substitution, Dfao};
use crate::numeration::system::{AuxiliarySequences, NumerationSystem};
use crate::sadic::bound::tribonacci_linear_recurrence_constant;
use crate::words::powers::max_power_with_mode;
use crate::words::scan::count_occurrences_raw;
use crate::words::word::FiniteWord;

/// The marker substitution: * -> *11, 0 -> 01, 1 -> 0.
pub fn marker_substitution() -> Substitution {
    Substitution::endomorphism("*01", &[("*", "* 1 1"), ("0", "0 1"), ("1", "0")])
        .expect("static rules")
}

/// The ten-state expansion substitution of the generating automaton.
pub fn state_substitution() -> Substitution {
    Substitution::endomorphism(
        "0123456789",
        &[
            ("0", "01"),
            ("1", "2"),
            ("2", "34"),
            ("3", "56"),
            ("4", "7"),
            ("5", "89"),
            ("6", "8"),
            ("7", "34"),
            ("8", "89"),
            ("9", "5"),
        ],
    )
    .expect("static rules")
}

/// Output map of the generating automaton.
pub fn state_outputs() -> Vec<(String, String)> {
    [
        ("0", "*"),
        ("1", "1"),
        ("2", "1"),
        ("3", "0"),
        ("4", "0"),
        ("5", "0"),
        ("6", "1"),
        ("7", "0"),
        ("8", "1"),
        ("9", "0"),
    ]
    .iter()
    .map(|(s, o)| (s.to_string(), o.to_string()))
    .collect()
}

/// The per-state suffix words of the seam identity.
pub fn state_suffixes() -> Substitution {
    let states = state_substitution();
    let marker = marker_substitution();
    let images: Vec<&str> = vec![".", "0", ".", "1", "0", "1", "1", ".", "1", "1"];
    let target = marker.source_alphabet().clone();
    let words = images
        .iter()
        .map(|text| {
            if *text == "." {
                FiniteWord::empty(target.clone())
            } else {
                FiniteWord::parse(&target, text).expect("static rules")
            }
        })
        .collect();
    Substitution::new(states.source_alphabet().clone(), target, words).expect("static rules")
}

/// The generating automaton over Zeckendorf representations.
pub fn appendix_b_dfao() -> Result<Dfao> {
    dfao_from_substitution(
        &state_substitution(),
        &state_outputs(),
        NumerationSystem::Fibonacci,
    )
}

#[derive(Debug, Clone, Serialize)]
pub struct AppendixBReport {
    pub horizon: usize,
    /// The three constructions agree on the scanned prefix.
    pub constructions_agree: bool,
    /// Seam identity sites checked / failed, for factors up to length 9.
    pub seam_sites_checked: usize,
    pub seam_failures: Vec<String>,
    /// Largest integer power found and its base.
    pub max_power_exponent: usize,
    pub max_power_base: String,
    pub has_4_power: bool,
    pub has_5_power: bool,
    /// Per shift offset, a factor of the shifted word occurring exactly
    /// once in the scanned window (with its position), as non-recurrence
    /// evidence.
    pub shift_witnesses: Vec<ShiftWitness>,
    pub double_one_count: usize,
    pub all_passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ShiftWitness {
    pub shift: usize,
    pub factor: String,
    pub position: usize,
    pub length: usize,
}

/// Cross-check battery for the marker word: the substitutive, two-level
/// automaton-substitution, and automaton constructions agree; the seam
/// identity holds on short factors; a 4th power occurs but no 5th; every
/// shift exposes a once-occurring factor; "11" occurs exactly once.
pub fn appendix_b_suite(horizon: usize, max_shift: usize) -> Result<AppendixBReport> {
    if horizon < 256 {
        return Err(Error::HorizonTooSmall { horizon, reason: "need at least 256".into() });
    }
    let sigma = marker_substitution();
    let psi = state_substitution();
    let dfao = appendix_b_dfao()?;

    let fixed = sigma.fixed_point_prefix(0, horizon)?;
    let alphabet = fixed.alphabet().clone();

    // Automaton word.
    let ns = NumerationSystem::Fibonacci;
    let mut automatic = Vec::with_capacity(horizon);
    for n in 0..horizon as u64 {
        let out = dfao.letter_at(ns, n)?;
        let name = dfao.output_alphabet().name(out);
        automatic.push(alphabet.index_of(name)?);
    }

    // Projection of the state fixed point.
    let outputs = state_outputs();
    let state_fixed = psi.fixed_point_prefix(0, horizon)?;
    let project: Vec<u32> = {
        let mut map = vec![0u32; 10];
        for (s, o) in &outputs {
            let idx = psi.source_alphabet().index_of(s)?;
            map[idx as usize] = alphabet.index_of(o)?;
        }
        state_fixed.symbols().iter().map(|&s| map[s as usize]).collect()
    };

    let constructions_agree =
        fixed.symbols() == automatic.as_slice() && fixed.symbols() == project.as_slice();

    // Seam identity on factors of the state word up to length 9:
    // project(psi^2(a_0..a_{l-1})) suffix(a_l) = suffix(a_0) sigma(project(psi(a_0..a_{l-1}))).
    let suffixes = state_suffixes();
    let psi2 = psi.power(2)?;
    let projection = {
        let words = (0..10u32)
            .map(|s| {
                let name = &outputs[s as usize].1;
                FiniteWord::parse(&alphabet, name).expect("output letters")
            })
            .collect::<Vec<_>>();
        Substitution::new(psi.source_alphabet().clone(), alphabet.clone(), words)?
    };
    let mut seam_sites = 0usize;
    let mut seam_failures = Vec::new();
    let state_syms = state_fixed.symbols();
    for len in 1..=8usize {
        let mut seen = std::collections::HashSet::new();
        for window in state_syms.windows(len + 1) {
            if !seen.insert(window.to_vec()) {
                continue;
            }
            seam_sites += 1;
            let body = FiniteWord::from_raw(psi.source_alphabet().clone(), window[..len].to_vec());
            let last = window[len];
            let lhs = projection
                .apply(&psi2.apply(&body)?)?
                .concat(&suffixes.image_word(last))?;
            let rhs = suffixes
                .image_word(window[0])
                .concat(&sigma.apply(&projection.apply(&psi.apply(&body)?)?)?)?;
            if lhs != rhs {
                seam_failures.push(format!(
                    "factor '{}{}'",
                    body.render(),
                    psi.source_alphabet().name(last)
                ));
            }
        }
    }

    // Power scan.
    let power = max_power_with_mode(&fixed, 6, ExecMode::default())?;
    let (exponent, base) = power
        .map(|w| (w.exponent, w.base.render()))
        .unwrap_or((1, String::new()));

    // Non-recurrence evidence per shift: the shortest prefix of the
    // shifted word occurring exactly once in the scanned window. The
    // occurrence count is nonincreasing in the prefix length and reaches 1,
    // so the minimal length is found by bisection.
    let mut shift_witnesses = Vec::new();
    for shift in 0..=max_shift {
        let tail = &fixed.symbols()[shift..];
        let unique = |len: usize| count_occurrences_raw(tail, &tail[..len]) == 1;
        let mut lo = 1usize;
        let mut hi = tail.len();
        if unique(lo) {
            hi = lo;
        }
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if unique(mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        shift_witnesses.push(ShiftWitness {
            shift,
            factor: FiniteWord::from_raw(alphabet.clone(), tail[..hi.min(48)].to_vec()).render(),
            position: shift,
            length: hi,
        });
    }

    let double_one = {
        let ones = FiniteWord::parse(&alphabet, "1 1")?;
        count_occurrences_raw(fixed.symbols(), ones.symbols())
    };

    let has_5_power = exponent >= 5;
    let all_passed = constructions_agree
        && seam_failures.is_empty()
        && exponent == 4
        && !has_5_power
        && shift_witnesses.len() == max_shift + 1
        && double_one == 1;
    Ok(AppendixBReport {
        horizon,
        constructions_agree,
        seam_sites_checked: seam_sites,
        seam_failures,
        max_power_exponent: exponent,
        max_power_base: base,
        has_4_power: exponent >= 4,
        has_5_power,
        shift_witnesses,
        double_one_count: double_one,
        all_passed,
    })
}

/// Closed-form recurrence value for the tribonacci fixed point: with
/// u_i < n <= u_{i+1}, the value is t_{i+4} + n - 1. The formula needs
/// n >= 2; R(1) must come from a scan.
pub fn tribonacci_recurrence_predict(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::OutOfRange(
            "formula domain starts at 2 (no window index below 1)".into(),
        ));
    }
    let big_n = num_bigint::BigUint::from(n);
    let mut aux = AuxiliarySequences::with_len(8);
    loop {
        if let Some(i) =
            (0..aux.u_len() - 1).find(|&i| *aux.u_big(i) < big_n && big_n <= *aux.u_big(i + 1))
        {
            if i + 4 < aux.t_len() {
                let value = aux.t_big(i + 4) + &big_n - 1u32;
                return u64::try_from(value).map_err(|_| {
                    Error::OutOfRange(format!("window length for {n} exceeds u64"))
                });
            }
        }
        let grown = AuxiliarySequences::with_len(aux.u_len() * 2);
        aux = grown;
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RatioPoint {
    pub index: usize,
    /// Checkpoint n = u_i + 1, the first length with a new window scale.
    pub n: u64,
    /// Predicted window length at the checkpoint.
    pub predicted: u64,
    /// Normalized scale (predicted - n + 1) / n; converges to the linear
    /// recurrence constant.
    pub ratio: f64,
}

/// Ratio series at the checkpoints n = u_i + 1, converging to the linear
/// recurrence constant 2 r^2 + r + 1 of the tribonacci fixed point.
/// Checkpoints beyond the machine-word range are rejected rather than
/// wrapped.
pub fn recurrence_constant_series(depth: usize) -> Result<Vec<RatioPoint>> {
    let aux = AuxiliarySequences::with_len(depth + 8);
    (0..depth)
        .map(|i| {
            let n = u64::try_from(aux.u_big(i).clone())
                .ok()
                .and_then(|u| u.checked_add(1))
                .ok_or_else(|| {
                    Error::OutOfRange(format!("checkpoint {i} exceeds u64; lower the depth"))
                })?;
            let predicted = tribonacci_recurrence_predict(n)?;
            Ok(RatioPoint {
                index: i,
                n,
                predicted,
                ratio: (predicted - n + 1) as f64 / n as f64,
            })
        })
        .collect()
}

/// The limit of the ratio series.
pub fn recurrence_constant_limit() -> f64 {
    tribonacci_linear_recurrence_constant()
}
