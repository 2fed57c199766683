//! The bundled verification experiments: twelve named checks with pinned
//! horizons and tolerances, each returning a pass/fail outcome with a
//! summary line. The `acceptance` integration test asserts every outcome;
//! the command-line `reproduce-all` runs the same set.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analyzers::{
    balance_discrepancy_consistency, balance_profile_with_mode, discrepancy_profile_with_mode,
    frequency_estimate, uniform_balance_scan_with_mode,
};
use crate::error::Result;
use crate::exec::ExecMode;
use crate::morphisms::substitution::Substitution;
use crate::numeration::appendix::{
    appendix_b_suite, recurrence_constant_limit, recurrence_constant_series,
    tribonacci_recurrence_predict,
};
use crate::sadic::arnoux_rauzy::{ar_congenial, DirectiveSequence};
use crate::sadic::bound::{theoretical_balance_bound, tribonacci_linear_recurrence_constant};
use crate::sadic::decisive::{
    decisiveness_certificate, frequency_from_level, seam_identity_check,
};
use crate::sadic::sturmian::{
    rotation_word_for_slope, sturmian_sadic, ContinuedFraction, IntervalVariant,
};
use crate::sources::{builtin_source, tribonacci_substitution};
use crate::toeplitz::{
    complexity_growth_check, exp_spec, multinomial, pd_equivalence_check, stirling_log_estimate,
};
use crate::words::alphabet::Alphabet;
use crate::words::profiles::{complexity_profile_with_mode, recurrence_profile_with_mode};
use crate::words::scan::count_occurrences;
use crate::words::source::WordSource;
use crate::words::word::FiniteWord;
use crate::words::{factor_set, factors_up_to, max_power_with_mode};

#[derive(Debug, Clone, Serialize)]
pub struct CriterionOutcome {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub details: String,
}

impl CriterionOutcome {
    fn new(id: usize, name: &str, passed: bool, details: String) -> Self {
        CriterionOutcome { id, name: name.to_string(), passed, details }
    }

    pub fn line(&self) -> String {
        format!(
            "criterion {:2} [{}] {} - {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.details
        )
    }
}

/// 1: whole-language balance sweep of the tribonacci word reports exactly 2.
pub fn criterion_1(mode: ExecMode) -> Result<CriterionOutcome> {
    let tri = builtin_source("tribonacci")?;
    let report = uniform_balance_scan_with_mode(&tri, 8, 300, 100_000, 10_000, mode)?;
    let passed = report.global_max == 2 && !report.truncated;
    Ok(CriterionOutcome::new(
        1,
        "tribonacci uniform balance constant",
        passed,
        format!(
            "global max {} over {} patterns (expected exactly 2)",
            report.global_max,
            report.per_pattern.len()
        ),
    ))
}

/// 2: the closed-form balance bound at the tribonacci parameters.
pub fn criterion_2() -> Result<CriterionOutcome> {
    let l = tribonacci_linear_recurrence_constant();
    let bound = theoretical_balance_bound(l, 2.0, 3.0);
    let passed = (4602.6..=4602.8).contains(&bound);
    Ok(CriterionOutcome::new(
        2,
        "closed-form balance bound",
        passed,
        format!("bound {bound:.4} (expected in [4602.6, 4602.8])"),
    ))
}

/// 3: recurrence formula against brute force, plus the ratio series.
pub fn criterion_3(mode: ExecMode) -> Result<CriterionOutcome> {
    let tri = builtin_source("tribonacci")?;
    let profile = recurrence_profile_with_mode(&tri, 28, 10_000, None, mode)?;
    let mut mismatches = Vec::new();
    for n in 2..=28usize {
        let predicted = tribonacci_recurrence_predict(n as u64)? as usize;
        if profile.value(n) != Some(predicted) {
            mismatches.push(format!("n={n}: scan {:?} vs formula {predicted}", profile.value(n)));
        }
    }
    let series = recurrence_constant_series(40)?;
    let increasing = series.windows(2).all(|p| p[0].ratio < p[1].ratio);
    let in_band = series[3..].iter().all(|p| (9.0..=10.5).contains(&p.ratio));
    let limit = recurrence_constant_limit();
    let tail_close = (series.last().unwrap().ratio - limit).abs() < 1e-6;
    let passed = mismatches.is_empty() && increasing && in_band && tail_close;
    Ok(CriterionOutcome::new(
        3,
        "tribonacci recurrence formula",
        passed,
        format!(
            "{} formula matches on 2..=28; series monotone {increasing}, in [9,10.5] from i=3 {in_band}, tail {:.6} vs {limit:.6}",
            if mismatches.is_empty() { "brute-force" } else { &mismatches[0] },
            series.last().unwrap().ratio
        ),
    ))
}

/// 4: the non-recurrent marker word battery.
pub fn criterion_4() -> Result<CriterionOutcome> {
    let report = appendix_b_suite(10_000, 32)?;
    Ok(CriterionOutcome::new(
        4,
        "marker word battery",
        report.all_passed,
        format!(
            "constructions agree {}; seam sites {} (failures {}); max power {}; '11' count {}; {} shift witnesses",
            report.constructions_agree,
            report.seam_sites_checked,
            report.seam_failures.len(),
            report.max_power_exponent,
            report.double_one_count,
            report.shift_witnesses.len()
        ),
    ))
}

/// 5: balance/discrepancy consistency over short patterns.
pub fn criterion_5(mode: ExecMode) -> Result<CriterionOutcome> {
    let horizon = 100_000;
    let n_max = 300;
    let mut checked = 0usize;
    let mut violations = 0usize;
    let mut first = String::new();
    for name in ["tribonacci", "fibonacci-word"] {
        let source = builtin_source(name)?;
        for pattern in factors_up_to(&source, 4, horizon)? {
            let b = balance_profile_with_mode(&source, &pattern, n_max, horizon, mode)?;
            let d = discrepancy_profile_with_mode(&source, &pattern, None, n_max, horizon, mode)?;
            let report = balance_discrepancy_consistency(&b, &d, None)?;
            checked += 1;
            if !report.consistent() {
                violations += report.violations.len();
                if first.is_empty() {
                    first = format!("{name}/{}: {:?}", pattern, report.violations[0]);
                }
            }
        }
    }
    Ok(CriterionOutcome::new(
        5,
        "balance vs discrepancy consistency",
        violations == 0,
        format!("{checked} patterns checked, {violations} violations {first}"),
    ))
}

/// 6: exact drift growth of the nested doubling-word prefixes.
pub fn criterion_6() -> Result<CriterionOutcome> {
    // The letter-exchanged doubling substitution: 1 -> 10, 0 -> 11, fixed
    // point of 1; u_0 = 1 and u_{n+1} = tau^2(u_n) 1.
    let tau = Substitution::endomorphism("01", &[("0", "11"), ("1", "10")])?;
    let tau2 = tau.power(2)?;
    let alphabet = tau.source_alphabet().clone();
    let one = alphabet.index_of("1")?;
    let mut u = FiniteWord::new(alphabet.clone(), vec![one])?;
    let mut all_exact = true;
    let mut rows = Vec::new();
    for n in 0..=8usize {
        if n > 0 {
            u = tau2.apply(&u)?.concat(&FiniteWord::new(alphabet.clone(), vec![one])?)?;
        }
        // |u|_1 - (2/3)|u| = (n+1)/3, checked as 3|u|_1 - 2|u| = n + 1.
        let ones = u.letter_counts()[one as usize] as i128;
        let len = u.len() as i128;
        let exact = 3 * ones - 2 * len == (n as i128) + 1;
        all_exact &= exact;
        rows.push(format!("n={n}:{}", if exact { "ok" } else { "off" }));
    }
    Ok(CriterionOutcome::new(
        6,
        "doubling-word drift is (n+1)/3",
        all_exact,
        rows.join(" "),
    ))
}

/// 7: the two Sturmian constructions agree, and complexity is n + 1.
pub fn criterion_7(mode: ExecMode) -> Result<CriterionOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut failures = Vec::new();
    for trial in 0..10 {
        let quotients: Vec<u64> = (0..30).map(|_| rng.gen_range(1..=4)).collect();
        let cf = ContinuedFraction::finite(quotients.clone())?;
        let cs = sturmian_sadic(&cf)?;
        let sadic = cs.level_prefix(0, 10_000)?;
        let rotation =
            rotation_word_for_slope(&cf.slope_for_rotation(), 30, IntervalVariant::LeftClosed, 10_000)?;
        if sadic.symbols() != rotation.symbols() {
            failures.push(format!("trial {trial}: prefix mismatch"));
            continue;
        }
        let source = WordSource::sadic_limit(cs)?;
        let profile = complexity_profile_with_mode(&source, 100, 10_000, None, mode)?;
        for n in 1..=100 {
            if profile.count(n) != n + 1 {
                failures.push(format!("trial {trial}: p({n}) = {}", profile.count(n)));
                break;
            }
        }
    }
    Ok(CriterionOutcome::new(
        7,
        "rotation coding vs level construction",
        failures.is_empty(),
        if failures.is_empty() {
            "10 random bounded-quotient expansions agree on 10^4 symbols; complexity n+1".into()
        } else {
            failures.join("; ")
        },
    ))
}

/// 8: ternary level words have complexity 2n + 1.
pub fn criterion_8(mode: ExecMode) -> Result<CriterionOutcome> {
    let alphabet = Alphabet::from_chars("abc");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let mut failures = Vec::new();
    for trial in 0..5 {
        // Random permutation blocks keep every letter recurring with weak
        // quotients at most 2.
        let mut period = Vec::new();
        for _ in 0..8 {
            let mut block = vec![0u32, 1, 2];
            for i in (1..3usize).rev() {
                let j = rng.gen_range(0..=i);
                block.swap(i, j);
            }
            period.extend(block);
        }
        let ds = DirectiveSequence::new(alphabet.clone(), Vec::new(), period)?;
        let (cs, warnings) = ar_congenial(&ds, rng.gen_range(0..3))?;
        if !warnings.is_empty() {
            failures.push(format!("trial {trial}: {warnings:?}"));
            continue;
        }
        let source = WordSource::sadic_limit(cs)?;
        let profile = complexity_profile_with_mode(&source, 100, 100_000, None, mode)?;
        for n in 1..=100 {
            if profile.count(n) != 2 * n + 1 {
                failures.push(format!("trial {trial}: p({n}) = {}", profile.count(n)));
                break;
            }
        }
    }
    Ok(CriterionOutcome::new(
        8,
        "ternary directive words have complexity 2n+1",
        failures.is_empty(),
        if failures.is_empty() {
            "5 directive sequences, p(n) = 2n+1 for n <= 100".into()
        } else {
            failures.join("; ")
        },
    ))
}

/// Observed lower bound for a word's uniform balance constant at one
/// horizon: the largest per-pattern balance value over short patterns,
/// combined with the power witness: a factor v^k rules out uniform
/// balance with any constant at or below (k - 3) / 2.
fn observed_uniform_constant(
    source: &WordSource,
    horizon: usize,
    mode: ExecMode,
) -> Result<f64> {
    let scan = uniform_balance_scan_with_mode(source, 4, 300, horizon, 10_000, mode)?;
    let prefix = source.prefix(horizon)?;
    // Only exponents beyond 7 can beat the pattern scan, so short periods
    // suffice.
    let exponent = crate::words::powers::max_fractional_exponent(&prefix, horizon / 6, mode);
    let from_power = (exponent - 3.0) / 2.0;
    Ok((scan.global_max as f64).max(from_power))
}

/// 9: growing quotients force a growing observed balance constant;
/// bounded quotients stay below a fixed cap. Fixed-length patterns alone
/// cannot witness the growth (every pattern of a Sturmian word is balanced
/// with its own constant), so the observed constant also draws on power
/// witnesses: the quotient-power blocks of the level construction put
/// k-th powers in the prefix, and a k-th power forces any uniform
/// constant above (k - 3) / 2.
pub fn criterion_9(mode: ExecMode) -> Result<CriterionOutcome> {
    let growing_cf = ContinuedFraction::finite((1..=16).collect())?;
    let growing = WordSource::sadic_limit(sturmian_sadic(&growing_cf)?)?;
    let mut growing_values = Vec::new();
    for horizon in [1_000usize, 10_000, 100_000] {
        growing_values.push(observed_uniform_constant(&growing, horizon, mode)?);
    }
    let strictly_increasing =
        growing_values[0] < growing_values[1] && growing_values[1] < growing_values[2];

    let mut bounded_max = 0.0f64;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let mut bounded_cfs: Vec<Vec<u64>> = vec![vec![1; 30], vec![2; 30], vec![3; 30]];
    for _ in 0..3 {
        bounded_cfs.push((0..30).map(|_| rng.gen_range(1..=4)).collect());
    }
    for quotients in bounded_cfs {
        let cf = ContinuedFraction::finite(quotients)?;
        let source = WordSource::sadic_limit(sturmian_sadic(&cf)?)?;
        bounded_max = bounded_max.max(observed_uniform_constant(&source, 100_000, mode)?);
    }
    let passed = strictly_increasing && bounded_max <= 8.0;
    Ok(CriterionOutcome::new(
        9,
        "unbounded quotients grow the balance constant",
        passed,
        format!(
            "growing word: [{:.3}, {:.3}, {:.3}] across 10^3..10^5 (strictly increasing {strictly_increasing}); bounded examples stay at {bounded_max:.3} (cap 8)",
            growing_values[0], growing_values[1], growing_values[2]
        ),
    ))
}

/// 10: tower checks: doubling equivalence, the six-block level, counting.
pub fn criterion_10() -> Result<CriterionOutcome> {
    let pd_ok = pd_equivalence_check(4096)?;

    let spec = exp_spec(2, vec![4, 4, 4], 0x5eed_0010)?;
    let stats = spec.exp_stats().unwrap();
    let w1 = stats[0]
        .member_count
        .as_u64()
        .map(|c| c == 6)
        .unwrap_or(false);
    let rows = complexity_growth_check(&spec, 2, 10_000)?;
    let level2 = rows.iter().find(|r| r.level == 2);
    let growth_ok = level2
        .map(|r| r.period == 8 && r.bound_met == Some(true))
        .unwrap_or(false);

    let mut stirling_ok = true;
    let mut stirling_rows = Vec::new();
    for (d, k) in [(2u64, 10u64), (3, 5)] {
        let exact: f64 = multinomial(d, k)?.to_string().parse().unwrap();
        let estimate = stirling_log_estimate(d, k)?.exp();
        let rel = (estimate - exact).abs() / exact;
        stirling_ok &= rel < 0.02;
        stirling_rows.push(format!("({d},{k}): {:.3}%", rel * 100.0));
    }
    let passed = pd_ok && w1 && growth_ok && stirling_ok;
    Ok(CriterionOutcome::new(
        10,
        "tower equivalence and counting",
        passed,
        format!(
            "doubling at 4^6 {pd_ok}; |W_1| = 6 {w1}; p(8) >= 6 {growth_ok}; estimate errors {}",
            stirling_rows.join(" ")
        ),
    ))
}

/// 11: no 7th power at 10^5, and the occurrence bound on random pairs.
pub fn criterion_11(mode: ExecMode) -> Result<CriterionOutcome> {
    let tri = builtin_source("tribonacci")?;
    let prefix = tri.prefix(100_000)?;
    let witness = max_power_with_mode(&prefix, 8, mode)?;
    let exponent = witness.map_or(1, |w| w.exponent);
    let no_seventh = exponent < 7;

    // Occurrence bound with P = 7 (the power-freeness exponent from the
    // observed balance constant 2).
    let fib = builtin_source("fibonacci-word")?.prefix(100_000)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0011);
    let mut bound_ok = true;
    for trial in 0..1000 {
        let text = if trial % 2 == 0 { &prefix } else { &fib };
        let v_len = rng.gen_range(2..2000usize);
        let v_start = rng.gen_range(0..text.len() - v_len);
        let v = text.slice(v_start, v_start + v_len);
        let u_len = rng.gen_range(1..=12usize.min(v_len));
        let u_start = rng.gen_range(0..text.len() - u_len);
        let u = text.slice(u_start, u_start + u_len);
        let count = count_occurrences(&v, &u)? as f64;
        if count > 7.0 * v.len() as f64 / u.len() as f64 {
            bound_ok = false;
            break;
        }
    }
    Ok(CriterionOutcome::new(
        11,
        "power-freeness and the occurrence bound",
        no_seventh && bound_ok,
        format!("max integer power {exponent} (< 7); occurrence bound on 1000 pairs: {bound_ok}"),
    ))
}

/// 12: seam identity sites and predicted pattern frequencies.
pub fn criterion_12() -> Result<CriterionOutcome> {
    let tri_sub = tribonacci_substitution();
    let tri = builtin_source("tribonacci")?;
    let factors2 = factor_set(&tri, 2, 10_000)?.into_iter().collect();
    let cert = decisiveness_certificate(&tri_sub, &factors2, 1)?
        .expect("left-proper substitutions are 1-decisive");

    let prefix = tri.prefix(5_000)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0012);
    let mut seam_ok = true;
    for _ in 0..100 {
        let w_len = rng.gen_range(1..=32usize);
        let position = rng.gen_range(0..4000usize);
        let u_len = rng.gen_range(1..=2usize);
        let u_start = rng.gen_range(0..prefix.len() - u_len);
        let u = prefix.slice(u_start, u_start + u_len);
        if !seam_identity_check(&cert, &tri_sub, &tri, position, w_len, &u)? {
            seam_ok = false;
            break;
        }
    }

    let horizon = 100_000;
    let long = tri.prefix(horizon)?;
    let counts = long.letter_counts();
    let nu: Vec<f64> = counts.iter().map(|&c| c as f64 / horizon as f64).collect();
    let mut mu_ok = true;
    let mut worst = 0.0f64;
    for pattern in factors_up_to(&tri, 2, horizon)? {
        let predicted = frequency_from_level(&cert, &tri_sub, &nu, &pattern)?;
        let observed = frequency_estimate(&tri, &pattern, horizon)?.estimate;
        let err = (predicted - observed).abs();
        worst = worst.max(err);
        mu_ok &= err < 1e-3;
    }
    Ok(CriterionOutcome::new(
        12,
        "seam identity and level frequencies",
        seam_ok && mu_ok,
        format!("100 seam sites ok {seam_ok}; worst frequency error {worst:.2e} (< 1e-3)"),
    ))
}

/// Run the full set with the given execution mode.
pub fn run_all(mode: ExecMode) -> Result<Vec<CriterionOutcome>> {
    Ok(vec![
        criterion_1(mode)?,
        criterion_2()?,
        criterion_3(mode)?,
        criterion_4()?,
        criterion_5(mode)?,
        criterion_6()?,
        criterion_7(mode)?,
        criterion_8(mode)?,
        criterion_9(mode)?,
        criterion_10()?,
        criterion_11(mode)?,
        criterion_12()?,
    ])
}
