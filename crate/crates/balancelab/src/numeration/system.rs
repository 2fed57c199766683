//! Greedy positional numeration over the Fibonacci and Tribonacci bases.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NumerationSystem {
    /// Basis 1, 2, 3, 5, 8, ...; representations avoid adjacent ones.
    Fibonacci,
    /// Basis 1, 2, 4, 7, 13, ...; representations avoid three adjacent ones.
    Tribonacci,
}

impl NumerationSystem {
    /// Basis values up to and including the first element > `limit`.
    pub fn basis(&self, limit: u64) -> Vec<u64> {
        let mut basis: Vec<u64> = match self {
            NumerationSystem::Fibonacci => vec![1, 2],
            NumerationSystem::Tribonacci => vec![1, 2, 4],
        };
        while *basis.last().expect("seeded") <= limit {
            let next = match self {
                NumerationSystem::Fibonacci => {
                    basis[basis.len() - 1] + basis[basis.len() - 2]
                }
                NumerationSystem::Tribonacci => {
                    basis[basis.len() - 1] + basis[basis.len() - 2] + basis[basis.len() - 3]
                }
            };
            basis.push(next);
        }
        basis
    }

    /// Longest run of ones a representation may contain.
    pub fn max_one_run(&self) -> usize {
        match self {
            NumerationSystem::Fibonacci => 1,
            NumerationSystem::Tribonacci => 2,
        }
    }

    /// Greedy most-significant-first digit word of `n`; empty for 0.
    pub fn to_representation(&self, n: u64) -> Vec<u8> {
        if n == 0 {
            return Vec::new();
        }
        let basis = self.basis(n);
        let start = basis.iter().rposition(|&b| b <= n).expect("basis includes 1");
        let mut digits = Vec::with_capacity(start + 1);
        let mut rest = n;
        for i in (0..=start).rev() {
            if basis[i] <= rest {
                digits.push(1);
                rest -= basis[i];
            } else {
                digits.push(0);
            }
        }
        debug_assert_eq!(rest, 0);
        digits
    }

    /// Value of a most-significant-first digit word. Rejects digits other
    /// than 0/1, leading zeros, and forbidden one-runs.
    pub fn from_representation(&self, digits: &[u8]) -> Result<u64> {
        if digits.is_empty() {
            return Ok(0);
        }
        if digits[0] == 0 {
            return Err(Error::InvalidDigits("leading zero".into()));
        }
        if digits.iter().any(|&d| d > 1) {
            return Err(Error::InvalidDigits("digits must be 0 or 1".into()));
        }
        let max_run = self.max_one_run();
        let mut run = 0usize;
        for &d in digits {
            run = if d == 1 { run + 1 } else { 0 };
            if run > max_run {
                return Err(Error::InvalidDigits(format!(
                    "run of {} ones is not admissible",
                    run
                )));
            }
        }
        let mut basis = self.basis(1);
        while basis.len() < digits.len() {
            let next = match self {
                NumerationSystem::Fibonacci => basis[basis.len() - 1] + basis[basis.len() - 2],
                NumerationSystem::Tribonacci => {
                    basis[basis.len() - 1] + basis[basis.len() - 2] + basis[basis.len() - 3]
                }
            };
            basis.push(next);
        }
        let mut value = 0u64;
        for (i, &d) in digits.iter().rev().enumerate() {
            if d == 1 {
                value += basis[i];
            }
        }
        Ok(value)
    }
}

/// The tribonacci count sequence (1, 2, 4, 7, 13, ...) and the window
/// sequence (1, 2, 4, 8, 15, 28, 52, ...) with u_n = 2 u_{n-1} - u_{n-4},
/// materialized to demand. Values are arbitrary-precision; the accessors
/// hand out machine words where the callers need them.
#[derive(Debug, Clone)]
pub struct AuxiliarySequences {
    t: Vec<num_bigint::BigUint>,
    u: Vec<num_bigint::BigUint>,
}

impl AuxiliarySequences {
    pub fn with_len(len: usize) -> Self {
        use num_bigint::BigUint;
        let mut t: Vec<BigUint> =
            vec![BigUint::from(1u32), BigUint::from(2u32), BigUint::from(4u32)];
        while t.len() < len.max(4) {
            let n = t.len();
            t.push(&t[n - 1] + &t[n - 2] + &t[n - 3]);
        }
        let mut u: Vec<BigUint> = [1u32, 2, 4, 8].iter().map(|&x| BigUint::from(x)).collect();
        while u.len() < len.max(5) {
            let n = u.len();
            u.push(2u32 * &u[n - 1] - &u[n - 4]);
        }
        AuxiliarySequences { t, u }
    }

    pub fn t_big(&self, i: usize) -> &num_bigint::BigUint {
        &self.t[i]
    }

    pub fn u_big(&self, i: usize) -> &num_bigint::BigUint {
        &self.u[i]
    }

    /// Panics if the value exceeds the machine-word range; callers working
    /// at depths where that can happen should use the big accessors.
    pub fn t(&self, i: usize) -> u64 {
        u64::try_from(self.t[i].clone()).expect("count value exceeds u64")
    }

    pub fn u(&self, i: usize) -> u64 {
        u64::try_from(self.u[i].clone()).expect("window value exceeds u64")
    }

    pub fn t_len(&self) -> usize {
        self.t.len()
    }

    pub fn u_len(&self) -> usize {
        self.u.len()
    }
}
