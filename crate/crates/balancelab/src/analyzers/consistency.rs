//! Cross-validation of balance against discrepancy: a pattern with
//! discrepancy at most C is 2C-balanced, and a C-balanced pattern has
//! discrepancy at most C once the frequency error is accounted for.

use serde::Serialize;

use crate::analyzers::balance::{BalanceProfile, DiscrepancyProfile};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct ConsistencyViolation {
    pub n: usize,
    pub side: String,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConsistencyReport {
    pub pattern: String,
    pub horizon: usize,
    pub mu_error_bound: f64,
    pub checked_lengths: usize,
    pub violations: Vec<ConsistencyViolation>,
}

impl ConsistencyReport {
    pub fn consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Default frequency error bound when `mu` was estimated rather than
/// supplied exactly.
pub fn default_mu_error(horizon: usize) -> f64 {
    2.0 / (horizon as f64).sqrt()
}

/// Check, for every common length n, against the profile-wide extremes:
///   B(u, n) <= 2 max_m D(u, m) + 2 n mu_err
///   D(u, n) <= max_m B(u, m) + n mu_err
/// where `mu_err` bounds the error of the frequency used in D. The maxima
/// run over the full scanned range: a pattern with discrepancy bounded by C
/// is 2C-balanced length by length, but the balance constant bounding the
/// discrepancy is the supremum over all window lengths (at n below the
/// pattern length the balance values vanish while the drift term does not).
pub fn balance_discrepancy_consistency(
    balance: &BalanceProfile,
    discrepancy: &DiscrepancyProfile,
    mu_error_bound: Option<f64>,
) -> Result<ConsistencyReport> {
    if balance.pattern != discrepancy.pattern {
        return Err(Error::Invalid(format!(
            "profiles describe different patterns: '{}' vs '{}'",
            balance.pattern, discrepancy.pattern
        )));
    }
    if balance.horizon != discrepancy.horizon {
        return Err(Error::Invalid("profiles use different horizons".into()));
    }
    let mu_err = mu_error_bound.unwrap_or_else(|| default_mu_error(balance.horizon));
    let lengths = balance.values.len().min(discrepancy.values.len());
    let max_b = balance.values[..lengths]
        .iter()
        .map(|&b| b as f64)
        .fold(0.0, f64::max);
    let max_d = discrepancy.values[..lengths].iter().cloned().fold(0.0, f64::max);
    let mut violations = Vec::new();
    for i in 0..lengths {
        let n = i + 1;
        let b = balance.values[i] as f64;
        let d = discrepancy.values[i];
        let b_bound = 2.0 * max_d + 2.0 * n as f64 * mu_err + 1e-9;
        if b > b_bound {
            violations.push(ConsistencyViolation {
                n,
                side: "balance<=2*discrepancy".into(),
                lhs: b,
                rhs: b_bound,
            });
        }
        let d_bound = max_b + n as f64 * mu_err + 1e-9;
        if d > d_bound {
            violations.push(ConsistencyViolation {
                n,
                side: "discrepancy<=balance".into(),
                lhs: d,
                rhs: d_bound,
            });
        }
    }
    Ok(ConsistencyReport {
        pattern: balance.pattern.clone(),
        horizon: balance.horizon,
        mu_error_bound: mu_err,
        checked_lengths: lengths,
        violations,
    })
}
