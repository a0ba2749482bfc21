use std::collections::BTreeSet;

use num::BigUint;

use super::{for_each_word, BernoulliVector, Cylinder, ExactRational, Lab};
use crate::dynamics::Word;
use crate::error::{Error, Result};
use crate::rule::LocalRule;

/// A disjoint union of cylinders sharing the window `[lo, hi]`, one per word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CylinderUnion {
    lo: i64,
    hi: i64,
    words: BTreeSet<Vec<u64>>,
}

impl CylinderUnion {
    pub fn new(lo: i64, hi: i64, words: BTreeSet<Vec<u64>>) -> Result<Self> {
        if hi < lo {
            return Err(Error::Parse(format!("empty window [{lo}, {hi}]")));
        }
        let len = (hi - lo + 1) as usize;
        if words.iter().any(|w| w.len() != len) {
            return Err(Error::Parse("word length does not match window".into()));
        }
        Ok(CylinderUnion { lo, hi, words })
    }

    pub fn single(c: &Cylinder) -> Self {
        CylinderUnion {
            lo: c.start(),
            hi: c.end(),
            words: BTreeSet::from([c.symbols().to_vec()]),
        }
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn words(&self) -> &BTreeSet<Vec<u64>> {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn cylinders(&self) -> impl Iterator<Item = Cylinder> + '_ {
        self.words
            .iter()
            .map(|w| Word::new(self.lo, w.clone()).expect("nonempty window"))
    }
}

pub trait Measurable {
    fn measure(&self, mu: &BernoulliVector) -> ExactRational;
}

impl Measurable for Word {
    fn measure(&self, mu: &BernoulliVector) -> ExactRational {
        mu.word_measure(self.symbols())
    }
}

impl Measurable for CylinderUnion {
    fn measure(&self, mu: &BernoulliVector) -> ExactRational {
        let len = (self.hi - self.lo + 1) as u32;
        let numer: BigUint = if mu.is_uniform() {
            BigUint::from(self.words.len())
        } else {
            self.words.iter().map(|w| mu.word_weight(w)).sum()
        };
        ExactRational::new(numer.into(), mu.denom.pow(len).into())
    }
}

fn check_inputs(rule: &LocalRule, c: &Cylinder) -> Result<()> {
    c.check_alphabet(rule.modulus())
}

impl Lab {
    /// `T^{-1} C` by enumerating every word on `[a + l, a + s + r]`.
    pub fn preimage_brute_force(&self, rule: &LocalRule, c: &Cylinder) -> Result<CylinderUnion> {
        check_inputs(rule, c)?;
        let m = rule.modulus().value();
        let width = rule.width();
        let len = c.len() + width - 1;
        self.word_count(m, len)?;
        let target = c.symbols();
        let mut words = BTreeSet::new();
        for_each_word(m, len, |x| {
            let hit = target
                .iter()
                .enumerate()
                .all(|(t, &j)| rule.eval(&x[t..t + width]) == j);
            if hit {
                words.insert(x.to_vec());
            }
        });
        Ok(CylinderUnion {
            lo: c.start() + rule.l(),
            hi: c.end() + rule.r(),
            words,
        })
    }

    /// `T^{-1} C` for a left- or right-permutative rule by back-substitution:
    /// `r - l` free coordinates, each output constraint then fixes the
    /// permutative end variable. Yields exactly `m^{r-l}` words.
    pub fn preimage_permutative(&self, rule: &LocalRule, c: &Cylinder) -> Result<CylinderUnion> {
        check_inputs(rule, c)?;
        let class = rule.permutativity();
        if !class.left && !class.right {
            return Err(Error::InvalidRule(format!("{rule} is not permutative")));
        }
        let md = rule.modulus();
        let m = md.value();
        let width = rule.width();
        let free = width - 1;
        let len = c.len() + free;
        self.word_count(m, free)?;
        let coeffs = rule.coeffs();
        let target = c.symbols();
        let mut words = BTreeSet::new();
        let mut x = vec![0u64; len];

        if class.right {
            let inv = md.inv(coeffs[free])?;
            for_each_word(m, free, |seed| {
                x[..free].copy_from_slice(seed);
                for (t, &j) in target.iter().enumerate() {
                    let partial = rule_partial(md, &coeffs[..free], &x[t..t + free]);
                    x[t + free] = md.mul(inv, md.sub(j, partial));
                }
                words.insert(x.clone());
            });
        } else {
            let inv = md.inv(coeffs[0])?;
            for_each_word(m, free, |seed| {
                x[len - free..].copy_from_slice(seed);
                for (t, &j) in target.iter().enumerate().rev() {
                    let partial = rule_partial(md, &coeffs[1..], &x[t + 1..t + width]);
                    x[t] = md.mul(inv, md.sub(j, partial));
                }
                words.insert(x.clone());
            });
        }
        Ok(CylinderUnion {
            lo: c.start() + rule.l(),
            hi: c.end() + rule.r(),
            words,
        })
    }

    /// `T^{-1} C`, by back-substitution when the rule is permutative and by
    /// enumeration otherwise.
    pub fn preimage_cylinder(&self, rule: &LocalRule, c: &Cylinder) -> Result<CylinderUnion> {
        let class = rule.permutativity();
        if class.left || class.right {
            self.preimage_permutative(rule, c)
        } else {
            self.preimage_brute_force(rule, c)
        }
    }
}

fn rule_partial(md: &crate::modular::Modulus, coeffs: &[u64], xs: &[u64]) -> u64 {
    coeffs
        .iter()
        .zip(xs)
        .fold(0, |acc, (&c, &x)| md.add(acc, md.mul(c, x)))
}
