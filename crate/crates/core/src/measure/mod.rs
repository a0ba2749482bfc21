//! Exact measure computations on `Z_m^Z` under Bernoulli product measures.
//!
//! Every quantity here is a finite sum of products of symbol probabilities,
//! so results are exact rationals and theorem-level statements (measure
//! preservation, window-disjoint independence) become equality checks.

mod cylinder;
mod mixing;
mod partition;

pub use cylinder::{CylinderUnion, Measurable};
pub use mixing::{MixingReport, MixingRow, MixingTable};
pub use partition::{Partition, WeakBernoulliReport};

use num::{BigRational, BigUint, Integer, One, Signed};

use crate::dynamics::Word;
use crate::error::{Error, Result};
use crate::modular::Modulus;

pub type ExactRational = BigRational;

/// A cylinder `_a[j_0, ..., j_s]`: all sequences with `x_{a+t} = j_t`.
pub type Cylinder = Word;

/// Default bound on the number of words a single enumeration may visit.
pub const DEFAULT_ENUM_GUARD: u64 = 1 << 24;

/// Environment variable overriding [`DEFAULT_ENUM_GUARD`] in [`Lab::from_env`].
pub const ENUM_GUARD_ENV: &str = "LCA_ENUM_GUARD";

/// Probability vector `(p_0, ..., p_{m-1})` defining a Bernoulli measure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliVector {
    probs: Vec<ExactRational>,
    uniform: bool,
    // p_s = numer[s] / denom, denom the lcm of the denominators
    numer: Vec<BigUint>,
    denom: BigUint,
}

impl BernoulliVector {
    pub fn uniform(modulus: &Modulus) -> Self {
        let m = modulus.value();
        let p = ExactRational::new(1.into(), (m as i64).into());
        BernoulliVector {
            probs: vec![p; m as usize],
            uniform: true,
            numer: vec![BigUint::one(); m as usize],
            denom: BigUint::from(m),
        }
    }

    pub fn new(probs: Vec<ExactRational>) -> Result<Self> {
        if probs.len() < 2 {
            return Err(Error::InvalidMeasure("need at least two symbols".into()));
        }
        if probs.iter().any(|p| p.is_negative()) {
            return Err(Error::InvalidMeasure("negative probability".into()));
        }
        let total: ExactRational = probs.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidMeasure(format!(
                "probabilities sum to {total}"
            )));
        }
        let uniform = probs.iter().all(|p| *p == probs[0]);
        let denom = probs
            .iter()
            .fold(num::BigInt::one(), |acc, p| acc.lcm(p.denom()));
        let numer = probs
            .iter()
            .map(|p| {
                (p.numer() * (&denom / p.denom()))
                    .to_biguint()
                    .expect("nonnegative")
            })
            .collect();
        Ok(BernoulliVector {
            probs,
            uniform,
            numer,
            denom: denom.to_biguint().expect("positive"),
        })
    }

    pub fn probs(&self) -> &[ExactRational] {
        &self.probs
    }

    pub fn is_uniform(&self) -> bool {
        self.uniform
    }

    pub fn alphabet_size(&self) -> usize {
        self.probs.len()
    }

    pub fn prob(&self, symbol: u64) -> &ExactRational {
        &self.probs[symbol as usize]
    }

    /// `p_{j_0} ... p_{j_s}`.
    pub fn word_measure(&self, symbols: &[u64]) -> ExactRational {
        ExactRational::new(
            self.word_weight(symbols).into(),
            self.denom.pow(symbols.len() as u32).into(),
        )
    }

    /// Numerator of the word measure over `denom^len`.
    fn word_weight(&self, symbols: &[u64]) -> BigUint {
        if self.uniform {
            return BigUint::one();
        }
        symbols
            .iter()
            .fold(BigUint::one(), |acc, &s| acc * &self.numer[s as usize])
    }

    fn check_alphabet(&self, modulus: &Modulus) -> Result<()> {
        if self.probs.len() as u64 != modulus.value() {
            return Err(Error::InvalidMeasure(format!(
                "vector has {} entries for modulus {}",
                self.probs.len(),
                modulus.value()
            )));
        }
        Ok(())
    }
}

/// Enumeration context; holds the word-count guard.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lab {
    guard: u64,
}

impl Default for Lab {
    fn default() -> Self {
        Lab {
            guard: DEFAULT_ENUM_GUARD,
        }
    }
}

impl Lab {
    pub fn with_guard(guard: u64) -> Self {
        Lab { guard }
    }

    /// Reads the guard from `LCA_ENUM_GUARD`, falling back to the default.
    pub fn from_env() -> Result<Self> {
        match std::env::var(ENUM_GUARD_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map(Lab::with_guard)
                .map_err(|_| Error::Parse(format!("{ENUM_GUARD_ENV}={v} is not an integer"))),
            Err(_) => Ok(Lab::default()),
        }
    }

    pub fn guard(&self) -> u64 {
        self.guard
    }

    /// `m^len`, or a guard error if it exceeds the limit.
    fn word_count(&self, m: u64, len: usize) -> Result<u64> {
        let count = u32::try_from(len)
            .ok()
            .and_then(|len| m.checked_pow(len))
            .filter(|&c| c <= self.guard);
        count.ok_or_else(|| Error::Guard {
            needed: format!("{m}^{len}"),
            limit: self.guard,
        })
    }
}

/// Visits every word of length `len` over `Z_m` in little-endian index
/// order: the word at index `sum x_t m^t` is visited `idx`-th.
fn for_each_word(m: u64, len: usize, mut visit: impl FnMut(&[u64])) {
    let mut digits = vec![0u64; len];
    loop {
        visit(&digits);
        let mut t = 0;
        loop {
            if t == len {
                return;
            }
            digits[t] += 1;
            if digits[t] < m {
                break;
            }
            digits[t] = 0;
            t += 1;
        }
    }
}

fn word_index(m: u64, digits: &[u64]) -> usize {
    digits
        .iter()
        .rev()
        .fold(0usize, |acc, &d| acc * m as usize + d as usize)
}
