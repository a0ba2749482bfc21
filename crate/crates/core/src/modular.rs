//! Residue arithmetic over `Z_m`: factorization, inverses, and the
//! Chinese-remainder split into prime-power components.

use std::fmt;

use crate::error::{Error, Result};

/// Largest modulus accepted by [`factorize`].
pub const MAX_MODULUS: u64 = 1 << 32;

/// A modulus `m >= 2` together with its prime factorization, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Modulus {
    m: u64,
    factors: Vec<(u64, u32)>,
}

impl Modulus {
    pub fn new(m: u64) -> Result<Self> {
        factorize(m)
    }

    pub fn value(&self) -> u64 {
        self.m
    }

    /// `(p_i, k_i)` pairs with `p_1 < p_2 < ...`.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// The prime powers `p_i^{k_i}`, in factor order.
    pub fn prime_powers(&self) -> Vec<u64> {
        self.factors.iter().map(|&(p, k)| p.pow(k)).collect()
    }

    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }

    /// Product of the distinct primes dividing `m`.
    pub fn radical(&self) -> u64 {
        self.primes().product()
    }

    pub fn reduce(&self, a: i128) -> u64 {
        a.rem_euclid(self.m as i128) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.m as u128) as u64
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b % self.m))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.m as u128) as u64
    }

    pub fn neg(&self, a: u64) -> u64 {
        let a = a % self.m;
        if a == 0 {
            0
        } else {
            self.m - a
        }
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.m;
        base %= self.m;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        inv_mod(a, self.m)
    }

    pub fn is_unit(&self, a: u64) -> bool {
        gcd(a % self.m, self.m) == 1
    }

    pub fn check_residue(&self, a: u64) -> Result<u64> {
        if a < self.m {
            Ok(a)
        } else {
            Err(Error::SymbolOutOfRange {
                symbol: a,
                m: self.m,
            })
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} =", self.m)?;
        for (idx, &(p, k)) in self.factors.iter().enumerate() {
            let sep = if idx == 0 { " " } else { " * " };
            if k == 1 {
                write!(f, "{sep}{p}")?;
            } else {
                write!(f, "{sep}{p}^{k}")?;
            }
        }
        Ok(())
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Trial-division factorization, guarded to `m <= 2^32`.
pub fn factorize(m: u64) -> Result<Modulus> {
    if !(2..=MAX_MODULUS).contains(&m) {
        return Err(Error::InvalidModulus(m));
    }
    let mut factors = Vec::new();
    let mut rest = m;
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            let mut k = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                k += 1;
            }
            factors.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Modulus { m, factors })
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm.
pub fn inv_mod(a: u64, m: u64) -> Result<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return Err(Error::NotAUnit { a, m });
    }
    Ok(t0.rem_euclid(m as i128) as u64)
}

/// Residues of `a` modulo each `p_i^{k_i}`.
pub fn crt_split(a: u64, m: &Modulus) -> Vec<u64> {
    m.prime_powers().into_iter().map(|q| a % q).collect()
}

/// The unique residue mod `m` with the given prime-power components.
pub fn crt_combine(residues: &[u64], m: &Modulus) -> Result<u64> {
    let powers = m.prime_powers();
    if residues.len() != powers.len() {
        return Err(Error::Arity {
            expected: powers.len(),
            got: residues.len(),
        });
    }
    let mut acc = 0u64;
    for (&r, &q) in residues.iter().zip(&powers) {
        let cofactor = m.value() / q;
        // cofactor is coprime to q by construction
        let lift = inv_mod(cofactor % q, q)?;
        let term = m.mul(m.mul(r % q, cofactor), lift);
        acc = m.add(acc, term);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn factorizations() {
        assert_eq!(factorize(4).unwrap().factors(), &[(2, 2)]);
        assert_eq!(factorize(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(9).unwrap().factors(), &[(3, 2)]);
        assert_eq!(factorize(2).unwrap().factors(), &[(2, 1)]);
        assert_eq!(
            factorize(4_294_967_291).unwrap().factors(),
            &[(4_294_967_291, 1)]
        );
        assert_eq!(factorize(1), Err(Error::InvalidModulus(1)));
        assert_eq!(factorize(0), Err(Error::InvalidModulus(0)));
        assert!(factorize(MAX_MODULUS + 1).is_err());
    }

    #[test]
    fn inverses() {
        assert_eq!(inv_mod(1, 7).unwrap(), 1);
        assert_eq!(inv_mod(3, 4).unwrap(), 3);
        assert_eq!(inv_mod(2, 4), Err(Error::NotAUnit { a: 2, m: 4 }));
        assert_eq!(inv_mod(0, 5), Err(Error::NotAUnit { a: 0, m: 5 }));
    }

    #[test]
    fn crt_examples() {
        let m = factorize(12).unwrap();
        assert_eq!(crt_split(7, &m), vec![3, 1]);
        assert_eq!(crt_combine(&[3, 1], &m).unwrap(), 7);
        assert_eq!(crt_split(0, &m), vec![0, 0]);
        assert_eq!(
            crt_combine(&[1], &m),
            Err(Error::Arity {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn display() {
        assert_eq!(factorize(12).unwrap().to_string(), "12 = 2^2 * 3");
        assert_eq!(factorize(7).unwrap().to_string(), "7 = 7");
    }

    proptest! {
        #[test]
        fn factorization_reconstructs(m in 2u64..200_000) {
            let md = factorize(m).unwrap();
            let prod: u64 = md.prime_powers().iter().product();
            prop_assert_eq!(prod, m);
            for &(p, k) in md.factors() {
                prop_assert!(k >= 1);
                prop_assert!((2..p).take_while(|d| d * d <= p).all(|d| p % d != 0));
            }
        }

        #[test]
        fn inverse_is_inverse(m in 2u64..5000, a in 0u64..5000) {
            let a = a % m;
            match inv_mod(a, m) {
                Ok(b) => prop_assert_eq!((a * b) % m, 1 % m),
                Err(_) => prop_assert_ne!(gcd(a, m), 1),
            }
        }

        #[test]
        fn crt_round_trip(m in 2u64..5000, a in 0u64..5000) {
            let md = factorize(m).unwrap();
            let a = a % m;
            prop_assert_eq!(crt_combine(&crt_split(a, &md), &md).unwrap(), a);
        }
    }
}
