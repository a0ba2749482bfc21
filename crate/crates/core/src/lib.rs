//! Exact computations for one-dimensional linear cellular automata over `Z_m`.
//!
//! A linear local rule `f(x_l, ..., x_r) = sum lambda_i x_i (mod m)` defines a
//! shift-commuting map `T` on `Z_m^Z`. This crate decides invertibility of `T`,
//! builds the inverse rule by formal power series inversion (with CRT for
//! composite `m`), and computes measure-theoretic quantities exactly:
//! Bernoulli measures of cylinders, preimages, correlations
//! `mu(A ∩ T^{-n} B)`, and ε-independence of partitions.
//!
//! ```
//! use lca::{LocalRule, Modulus};
//!
//! let f = LocalRule::new(Modulus::new(4)?, 1, vec![2, 2, 1])?;
//! let g = f.inverse()?;
//! assert_eq!((g.l(), g.coeffs()), (-5, &[2, 2, 1][..]));
//! assert_eq!(f.compose(&g)?, LocalRule::identity(Modulus::new(4)?));
//! # Ok::<(), lca::Error>(())
//! ```

pub mod cli;
pub mod dynamics;
mod error;
pub mod fps;
pub mod measure;
pub mod modular;
pub mod notation;
pub mod rule;

pub use dynamics::{apply_cyclic, apply_window, shift_cyclic, CyclicConfig, Word};
pub use error::{Error, Result};
pub use fps::{Invertibility, LaurentPoly, PrimeUnits};
pub use measure::{
    BernoulliVector, Cylinder, CylinderUnion, ExactRational, Lab, Measurable, MixingReport,
    MixingRow, MixingTable, Partition, WeakBernoulliReport,
};
pub use modular::{crt_combine, crt_split, factorize, inv_mod, Modulus};
pub use notation::RuleSpec;
pub use rule::{LocalRule, PermutativityClass};
