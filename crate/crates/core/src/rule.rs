//! Linear local rules `f(x_l, ..., x_r) = sum lambda_i x_i (mod m)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::fps::{Invertibility, LaurentPoly};
use crate::modular::{gcd, Modulus};

/// Largest `|l|` or `|r|` accepted when building a rule from raw coefficients.
pub const MAX_WINDOW_INDEX: i64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalRule {
    modulus: Modulus,
    l: i64,
    coeffs: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PermutativityClass {
    pub left: bool,
    pub right: bool,
}

impl PermutativityClass {
    pub fn bipermutative(self) -> bool {
        self.left && self.right
    }

    pub fn label(self) -> &'static str {
        match (self.left, self.right) {
            (true, true) => "bipermutative",
            (true, false) => "left",
            (false, true) => "right",
            (false, false) => "none",
        }
    }
}

impl LocalRule {
    /// Rule on the window `[l, l + coeffs.len() - 1]`.
    ///
    /// Coefficients must be canonical residues and not all zero. Zero end
    /// coefficients are kept, so the declared window may be wider than the
    /// effective one.
    pub fn new(modulus: Modulus, l: i64, coeffs: Vec<u64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidRule("empty coefficient list".into()));
        }
        for &c in &coeffs {
            modulus.check_residue(c)?;
        }
        if coeffs.iter().all(|&c| c == 0) {
            return Err(Error::InvalidRule("all coefficients are zero".into()));
        }
        let r = l + coeffs.len() as i64 - 1;
        if l.abs() > MAX_WINDOW_INDEX || r.abs() > MAX_WINDOW_INDEX {
            return Err(Error::InvalidRule(format!(
                "window [{l}, {r}] exceeds |index| <= {MAX_WINDOW_INDEX}"
            )));
        }
        Ok(LocalRule { modulus, l, coeffs })
    }

    /// `x_n -> x_n`.
    pub fn identity(modulus: Modulus) -> Self {
        LocalRule {
            modulus,
            l: 0,
            coeffs: vec![1],
        }
    }

    /// `x_n -> x_{n+t}`; `shift(m, 1)` is the left shift `sigma`.
    pub fn shift(modulus: Modulus, t: i64) -> Self {
        LocalRule {
            modulus,
            l: t,
            coeffs: vec![1],
        }
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn l(&self) -> i64 {
        self.l
    }

    pub fn r(&self) -> i64 {
        self.l + self.coeffs.len() as i64 - 1
    }

    pub fn width(&self) -> usize {
        self.coeffs.len()
    }

    /// `lambda_l, ..., lambda_r`.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: i64) -> u64 {
        if i < self.l || i > self.r() {
            0
        } else {
            self.coeffs[(i - self.l) as usize]
        }
    }

    /// Evaluates the rule on a neighbourhood `x_l, ..., x_r`.
    pub fn eval(&self, neighbourhood: &[u64]) -> u64 {
        debug_assert_eq!(neighbourhood.len(), self.coeffs.len());
        let m = self.modulus.value() as u128;
        let acc = self
            .coeffs
            .iter()
            .zip(neighbourhood)
            .fold(0u128, |acc, (&c, &x)| (acc + c as u128 * x as u128) % m);
        acc as u64
    }

    /// Same rule with zero end coefficients dropped.
    pub fn trimmed(&self) -> Self {
        Self::from_fps(&self.to_fps()).expect("rule is nonzero")
    }

    pub fn to_fps(&self) -> LaurentPoly {
        LaurentPoly::new(self.modulus.clone(), self.l, self.coeffs.clone())
    }

    pub fn from_fps(fps: &LaurentPoly) -> Result<Self> {
        if fps.is_zero() {
            return Err(Error::InvalidRule("zero series".into()));
        }
        Ok(LocalRule {
            modulus: fps.modulus().clone(),
            l: fps.lo(),
            coeffs: fps.coeffs().to_vec(),
        })
    }

    pub fn permutativity(&self) -> PermutativityClass {
        let m = self.modulus.value();
        PermutativityClass {
            left: gcd(self.coeffs[0], m) == 1,
            right: gcd(*self.coeffs.last().unwrap(), m) == 1,
        }
    }

    pub fn invertibility(&self) -> Invertibility {
        self.to_fps().invertibility().expect("rule is nonzero")
    }

    pub fn is_invertible(&self) -> bool {
        self.invertibility().is_invertible()
    }

    /// The inverse cellular automaton's local rule (trimmed).
    pub fn inverse(&self) -> Result<Self> {
        Self::from_fps(&self.to_fps().invert()?)
    }

    /// `outer . inner`: apply `inner` first, then `outer`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let product = self.to_fps().mul(&inner.to_fps())?;
        Self::from_fps(&product)
            .map_err(|_| Error::InvalidRule("composition vanishes identically".into()))
    }

    /// The local rule of `T^n`, trimmed. Fails when `f^n` vanishes mod `m`.
    pub fn iterate(&self, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRule("iterate exponent must be >= 1".into()));
        }
        Self::from_fps(&self.to_fps().pow(n))
            .map_err(|_| Error::InvalidRule(format!("iterate {n} vanishes identically")))
    }

    /// The formal window `[n l, n r]` of `f^n` from the declared window.
    pub fn formal_iterate_window(&self, n: u64) -> (i64, i64) {
        let n = n as i64;
        (n * self.l, n * self.r())
    }
}

impl fmt::Display for LocalRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (t, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let i = self.l + t as i64;
            if c == 1 {
                write!(f, "x[{i}]")?;
            } else {
                write!(f, "{c}x[{i}]")?;
            }
        }
        write!(f, " (mod {})", self.modulus.value())
    }
}
