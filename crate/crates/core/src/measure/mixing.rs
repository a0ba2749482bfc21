use std::io::Write;

use num::BigUint;
use rayon::prelude::*;

use super::{BernoulliVector, Cylinder, ExactRational, Lab, Measurable};
use crate::error::{Error, Result};
use crate::rule::LocalRule;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixingRow {
    pub n: u64,
    /// `mu(A ∩ T^{-n} B)`
    pub correlation: ExactRational,
    /// `mu(A) mu(B)`
    pub product: ExactRational,
    pub equal: bool,
    /// `[b + n l, b + t + n r]` from the rule's declared window.
    pub formal_window: (i64, i64),
    /// Whether `formal_window` misses the window of `A`.
    pub disjoint: bool,
}

/// Correlations `n -> mu(A ∩ T^{-n} B)` for `n = 0..=n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixingTable {
    pub rule: LocalRule,
    pub rows: Vec<MixingRow>,
}

impl MixingTable {
    /// Smallest `n0` such that every row with `n >= n0` has correlation equal
    /// to the product. `None` if the last row differs.
    pub fn first_stable(&self) -> Option<u64> {
        let mut first = None;
        for row in self.rows.iter().rev() {
            if !row.equal {
                break;
            }
            first = Some(row.n);
        }
        first
    }

    /// Every row whose formal window is disjoint from `A` shows equality.
    pub fn window_bound_holds(&self) -> bool {
        self.rows.iter().filter(|r| r.disjoint).all(|r| r.equal)
    }

    /// Whether the computed tail looks mixing (the last row factorizes).
    pub fn mixing_observed(&self) -> bool {
        self.rows.last().is_some_and(|r| r.equal)
    }

    /// CSV with columns `n, corr_num, corr_den, prod_num, prod_den, equal`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(out);
        let csv_err = |e: csv::Error| Error::Io(e.to_string());
        wtr.write_record(["n", "corr_num", "corr_den", "prod_num", "prod_den", "equal"])
            .map_err(csv_err)?;
        for row in &self.rows {
            wtr.write_record([
                row.n.to_string(),
                row.correlation.numer().to_string(),
                row.correlation.denom().to_string(),
                row.product.numer().to_string(),
                row.product.denom().to_string(),
                row.equal.to_string(),
            ])
            .map_err(csv_err)?;
        }
        wtr.flush()?;
        Ok(())
    }
}

/// Mixing tables for a rule and, when invertible, for its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixingReport {
    pub forward: MixingTable,
    pub inverse: Option<MixingTable>,
}

/// `mu(A ∩ B)` for two cylinders: zero if they disagree on the overlap.
fn cylinder_intersection(a: &Cylinder, b: &Cylinder, mu: &BernoulliVector) -> ExactRational {
    let consistent = (a.start().max(b.start())..=a.end().min(b.end())).all(|p| a.at(p) == b.at(p));
    if !consistent {
        return ExactRational::from_integer(0.into());
    }
    let extra: Vec<u64> = (b.start()..=b.end())
        .filter(|&p| a.at(p).is_none())
        .map(|p| b.at(p).unwrap())
        .collect();
    a.measure(mu) * mu.word_measure(&extra)
}

impl Lab {
    /// Exact `mu(A ∩ T^{-n} B)`.
    pub fn mixing_correlation(
        &self,
        rule: &LocalRule,
        a: &Cylinder,
        b: &Cylinder,
        n: u64,
        mu: &BernoulliVector,
    ) -> Result<ExactRational> {
        let md = rule.modulus();
        mu.check_alphabet(md)?;
        a.check_alphabet(md)?;
        b.check_alphabet(md)?;
        if n == 0 {
            return Ok(cylinder_intersection(a, b, mu));
        }
        let iterate = rule.iterate(n)?;
        let pre = self.preimage_cylinder(&iterate, b)?;
        let (lo, hi) = pre.window();

        let mut weight = BigUint::from(0u32);
        for w in pre.words() {
            let consistent = (a.start().max(lo)..=a.end().min(hi))
                .all(|p| a.at(p) == Some(w[(p - lo) as usize]));
            if consistent {
                if mu.is_uniform() {
                    weight += 1u32;
                } else {
                    weight += mu.word_weight(w);
                }
            }
        }
        let inside = ExactRational::new(weight.into(), mu.denom.pow((hi - lo + 1) as u32).into());
        let outside: Vec<u64> = (a.start()..=a.end())
            .filter(|&p| p < lo || p > hi)
            .map(|p| a.at(p).unwrap())
            .collect();
        Ok(inside * mu.word_measure(&outside))
    }

    /// Correlation table for `n = 0..=n_max`, rows computed in parallel.
    pub fn mixing_table(
        &self,
        rule: &LocalRule,
        a: &Cylinder,
        b: &Cylinder,
        n_max: u64,
        mu: &BernoulliVector,
    ) -> Result<MixingTable> {
        let product = a.measure(mu) * b.measure(mu);
        let rows = (0..=n_max)
            .into_par_iter()
            .map(|n| {
                let correlation = self.mixing_correlation(rule, a, b, n, mu)?;
                let (fl, fr) = if n == 0 {
                    (0, 0)
                } else {
                    rule.formal_iterate_window(n)
                };
                let formal_window = (b.start() + fl, b.end() + fr);
                let disjoint = formal_window.1 < a.start() || formal_window.0 > a.end();
                Ok(MixingRow {
                    n,
                    equal: correlation == product,
                    correlation,
                    product: product.clone(),
                    formal_window,
                    disjoint,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MixingTable {
            rule: rule.clone(),
            rows,
        })
    }

    /// Mixing tables for `T` and, if it is invertible, for `T^{-1}`.
    pub fn check_strong_mixing_window(
        &self,
        rule: &LocalRule,
        a: &Cylinder,
        b: &Cylinder,
        n_max: u64,
        mu: &BernoulliVector,
    ) -> Result<MixingReport> {
        let forward = self.mixing_table(rule, a, b, n_max, mu)?;
        let inverse = if rule.is_invertible() {
            Some(self.mixing_table(&rule.inverse()?, a, b, n_max, mu)?)
        } else {
            None
        };
        Ok(MixingReport { forward, inverse })
    }
}
