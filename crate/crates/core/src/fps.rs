//! Finite formal power series (Laurent polynomials) over `Z_m`.
//!
//! A series is stored by *rule index*: the coefficient at index `i` multiplies
//! `X^{-i}`, so a local rule `sum lambda_i x_{n+i}` maps to
//! `F(X) = sum lambda_i X^{-i}` with the same indices. Products of series are
//! plain index convolutions and correspond to composition of the rules.

use std::fmt;

use crate::error::{Error, Result};
use crate::modular::{crt_combine, Modulus};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    modulus: Modulus,
    lo: i64,
    coeffs: Vec<u64>,
}

/// Unit coefficients of a series seen modulo one prime factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeUnits {
    pub prime: u64,
    /// Indices `j` with `gcd(p, lambda_j) = 1`, ascending.
    pub unit_indices: Vec<i64>,
}

impl PrimeUnits {
    /// The index of the unique unit coefficient, if there is exactly one.
    pub fn unit_index(&self) -> Option<i64> {
        match self.unit_indices.as_slice() {
            [j] => Some(*j),
            _ => None,
        }
    }
}

/// Result of the invertibility criterion: one entry per prime factor of `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invertibility {
    pub per_prime: Vec<PrimeUnits>,
}

impl Invertibility {
    pub fn is_invertible(&self) -> bool {
        self.per_prime.iter().all(|u| u.unit_index().is_some())
    }

    pub fn unit_index(&self, prime: u64) -> Option<i64> {
        self.per_prime
            .iter()
            .find(|u| u.prime == prime)
            .and_then(PrimeUnits::unit_index)
    }
}

impl LaurentPoly {
    /// Builds `sum coeffs[t] X^{-(lo + t)}`, reducing coefficients mod `m`.
    pub fn new(modulus: Modulus, lo: i64, coeffs: Vec<u64>) -> Self {
        let m = modulus.value();
        let coeffs = coeffs.into_iter().map(|c| c % m).collect();
        let mut poly = LaurentPoly {
            modulus,
            lo,
            coeffs,
        };
        poly.trim();
        poly
    }

    pub fn zero(modulus: Modulus) -> Self {
        LaurentPoly {
            modulus,
            lo: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one(modulus: Modulus) -> Self {
        Self::monomial(modulus, 0, 1)
    }

    /// `c X^{-index}`.
    pub fn monomial(modulus: Modulus, index: i64, c: u64) -> Self {
        Self::new(modulus, index, vec![c])
    }

    fn trim(&mut self) {
        let Some(first) = self.coeffs.iter().position(|&c| c != 0) else {
            self.coeffs.clear();
            self.lo = 0;
            return;
        };
        let last = self.coeffs.iter().rposition(|&c| c != 0).unwrap();
        self.coeffs.truncate(last + 1);
        self.coeffs.drain(..first);
        self.lo += first as i64;
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.lo == 0 && self.coeffs == [1]
    }

    /// Smallest and largest index with a nonzero coefficient.
    pub fn support(&self) -> Option<(i64, i64)> {
        if self.is_zero() {
            None
        } else {
            Some((self.lo, self.lo + self.coeffs.len() as i64 - 1))
        }
    }

    /// `hi - lo` of the support, zero for the zero series.
    pub fn span(&self) -> i64 {
        self.support().map_or(0, |(lo, hi)| hi - lo)
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Coefficients for indices `lo..=hi`.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of `X^{-index}`.
    pub fn coeff(&self, index: i64) -> u64 {
        let t = index - self.lo;
        if t < 0 {
            return 0;
        }
        self.coeffs.get(t as usize).copied().unwrap_or(0)
    }

    /// Nonzero `(index, coefficient)` pairs, ascending by index.
    pub fn terms(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(t, &c)| (self.lo + t as i64, c))
    }

    fn same_modulus(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.value(),
                right: other.modulus.value(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        let (Some((a_lo, a_hi)), Some((b_lo, b_hi))) = (self.support(), other.support()) else {
            return Ok(if self.is_zero() {
                other.clone()
            } else {
                self.clone()
            });
        };
        let lo = a_lo.min(b_lo);
        let hi = a_hi.max(b_hi);
        let md = &self.modulus;
        let coeffs = (lo..=hi)
            .map(|i| md.add(self.coeff(i), other.coeff(i)))
            .collect();
        Ok(Self::new(md.clone(), lo, coeffs))
    }

    pub fn neg(&self) -> Self {
        let md = &self.modulus;
        let coeffs = self.coeffs.iter().map(|&c| md.neg(c)).collect();
        Self::new(md.clone(), self.lo, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u64) -> Self {
        let md = &self.modulus;
        let coeffs = self.coeffs.iter().map(|&x| md.mul(x, c)).collect();
        Self::new(md.clone(), self.lo, coeffs)
    }

    /// Moves every index by `delta`; multiplying by `X^{-delta}`.
    pub fn shift(&self, delta: i64) -> Self {
        LaurentPoly {
            modulus: self.modulus.clone(),
            lo: if self.is_zero() { 0 } else { self.lo + delta },
            coeffs: self.coeffs.clone(),
        }
    }

    /// Coefficient-wise reduction to a modulus dividing the current one.
    pub fn reduce_to(&self, target: &Modulus) -> Result<Self> {
        if !self.modulus.value().is_multiple_of(target.value()) {
            return Err(Error::ModulusMismatch {
                left: self.modulus.value(),
                right: target.value(),
            });
        }
        Ok(Self::new(target.clone(), self.lo, self.coeffs.clone()))
    }

    /// Product of two series: convolution of coefficients mod `m`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.modulus.clone()));
        }
        let m = self.modulus.value() as u128;
        let mut acc = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (s, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (t, &b) in other.coeffs.iter().enumerate() {
                acc[s + t] = (acc[s + t] + a as u128 * b as u128) % m;
            }
        }
        let coeffs = acc.into_iter().map(|c| c as u64).collect();
        Ok(Self::new(self.modulus.clone(), self.lo + other.lo, coeffs))
    }

    /// `F^n` by repeated squaring; `F^0 = 1`.
    pub fn pow(&self, mut n: u64) -> Self {
        let mut acc = Self::one(self.modulus.clone());
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base).expect("same modulus");
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base).expect("same modulus");
            }
        }
        acc
    }

    /// For every prime `p | m`, the coefficients that are units mod `p`.
    /// The series is invertible iff each prime sees exactly one.
    pub fn invertibility(&self) -> Result<Invertibility> {
        if self.is_zero() {
            return Err(Error::InvalidRule("zero series".into()));
        }
        let per_prime = self
            .modulus
            .primes()
            .map(|p| PrimeUnits {
                prime: p,
                unit_indices: self
                    .terms()
                    .filter(|&(_, c)| c % p != 0)
                    .map(|(i, _)| i)
                    .collect(),
            })
            .collect();
        Ok(Invertibility { per_prime })
    }

    pub fn is_invertible(&self) -> bool {
        self.invertibility().is_ok_and(|v| v.is_invertible())
    }

    /// Inverse over a prime power `p^k`.
    ///
    /// With the unique unit coefficient `lambda_j`, write
    /// `F = lambda_j X^{-j} (1 - E)` where `E = -lambda_j^{-1} X^{j} (F - lambda_j X^{-j})`
    /// has every coefficient divisible by `p`. Then `E^k = 0` and
    /// `G = lambda_j^{-1} X^{j} (1 + E + ... + E^{k-1})`. The unit is inverted
    /// modulo `p^k`, not just modulo `p`, so that `F G = 1` holds exactly.
    pub fn invert_prime_power(&self) -> Result<Self> {
        let md = self.modulus.clone();
        if !md.is_prime_power() {
            return Err(Error::InvalidModulus(md.value()));
        }
        let (p, k) = md.factors()[0];
        let verdict = self.invertibility()?;
        let j = verdict
            .unit_index(p)
            .ok_or(Error::NotInvertible(md.value()))?;
        let unit = self.coeff(j);
        let unit_inv = md.inv(unit)?;

        let rest = self.sub(&Self::monomial(md.clone(), j, unit))?;
        let nilpotent = rest.shift(-j).scale(md.neg(unit_inv));
        debug_assert!(nilpotent.coeffs.iter().all(|c| c % p == 0));

        // Horner: 1 + E(1 + E(1 + ...)), k terms
        let one = Self::one(md.clone());
        let mut series = one.clone();
        for _ in 1..k {
            series = one.add(&nilpotent.mul(&series)?)?;
        }
        let inverse = Self::monomial(md.clone(), -j, unit_inv).mul(&series)?;
        if !self.mul(&inverse)?.is_one() {
            return Err(Error::InverseCheck(md.value()));
        }
        Ok(inverse)
    }

    /// Inverse over any modulus: invert each prime-power component, then
    /// recombine coefficients by CRT on the union of the supports.
    pub fn invert(&self) -> Result<Self> {
        if !self.invertibility()?.is_invertible() {
            return Err(Error::NotInvertible(self.modulus.value()));
        }
        if self.modulus.is_prime_power() {
            return self.invert_prime_power();
        }
        let components = self
            .modulus
            .prime_powers()
            .into_iter()
            .map(|q| {
                let target = Modulus::new(q)?;
                self.reduce_to(&target)?.invert_prime_power()
            })
            .collect::<Result<Vec<_>>>()?;
        let supports: Vec<(i64, i64)> = components.iter().filter_map(Self::support).collect();
        let lo = supports.iter().map(|s| s.0).min().expect("nonzero inverse");
        let hi = supports.iter().map(|s| s.1).max().expect("nonzero inverse");
        let coeffs = (lo..=hi)
            .map(|i| {
                let residues: Vec<u64> = components.iter().map(|g| g.coeff(i)).collect();
                crt_combine(&residues, &self.modulus)
            })
            .collect::<Result<Vec<_>>>()?;
        let inverse = Self::new(self.modulus.clone(), lo, coeffs);
        if !self.mul(&inverse)?.is_one() {
            return Err(Error::InverseCheck(self.modulus.value()));
        }
        Ok(inverse)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (i, c)) in self.terms().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            let exp = -i;
            match (c, exp) {
                (c, 0) => write!(f, "{c}")?,
                (1, 1) => f.write_str("X")?,
                (1, e) => write!(f, "X^{e}")?,
                (c, 1) => write!(f, "{c}X")?,
                (c, e) => write!(f, "{c}X^{e}")?,
            }
        }
        Ok(())
    }
}
