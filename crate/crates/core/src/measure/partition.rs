use std::collections::HashMap;
use std::ops::AddAssign;

use num::{BigInt, BigUint, Signed};

use super::{for_each_word, word_index, BernoulliVector, ExactRational, Lab};
use crate::error::{Error, Result};
use crate::modular::Modulus;
use crate::rule::LocalRule;

/// A finite partition of `Z_m^Z` measurable on the window `[lo, hi]`.
///
/// `labels[idx]` is the cell of the word with little-endian index `idx`
/// (`x_lo` least significant). Labels are canonical: cells are numbered in
/// order of first appearance, so structurally equal partitions compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    modulus: Modulus,
    lo: i64,
    hi: i64,
    labels: Vec<u32>,
    cells: usize,
}

impl Partition {
    fn from_raw_labels(
        modulus: Modulus,
        lo: i64,
        hi: i64,
        raw: impl IntoIterator<Item = u64>,
    ) -> Self {
        let mut seen: HashMap<u64, u32> = HashMap::new();
        let labels = raw
            .into_iter()
            .map(|key| {
                let next = seen.len() as u32;
                *seen.entry(key).or_insert(next)
            })
            .collect();
        Partition {
            modulus,
            lo,
            hi,
            labels,
            cells: seen.len(),
        }
    }

    /// The one-cell partition on `[lo, hi]`.
    pub fn trivial(lab: &Lab, modulus: Modulus, lo: i64, hi: i64) -> Result<Self> {
        let size = lab.word_count(modulus.value(), window_len(lo, hi)?)?;
        Ok(Partition {
            modulus,
            lo,
            hi,
            labels: vec![0; size as usize],
            cells: 1,
        })
    }

    /// Partition by the full word on `[lo, hi]`: `m^{hi-lo+1}` cells.
    pub fn by_coordinates(lab: &Lab, modulus: Modulus, lo: i64, hi: i64) -> Result<Self> {
        let size = lab.word_count(modulus.value(), window_len(lo, hi)?)?;
        Ok(Partition {
            modulus,
            lo,
            hi,
            labels: (0..size as u32).collect(),
            cells: size as usize,
        })
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn cell_count(&self) -> usize {
        self.cells
    }

    pub fn label_of(&self, word: &[u64]) -> u32 {
        self.labels[word_index(self.modulus.value(), word)]
    }

    fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    /// Same partition read on a larger window.
    fn extend(&self, lab: &Lab, lo: i64, hi: i64) -> Result<Partition> {
        debug_assert!(lo <= self.lo && hi >= self.hi);
        if (lo, hi) == (self.lo, self.hi) {
            return Ok(self.clone());
        }
        let m = self.modulus.value();
        lab.word_count(m, window_len(lo, hi)?)?;
        let offset = (self.lo - lo) as usize;
        let own = self.len();
        let mut labels = Vec::new();
        for_each_word(m, window_len(lo, hi)?, |x| {
            labels.push(self.label_of(&x[offset..offset + own]));
        });
        Ok(Partition {
            modulus: self.modulus.clone(),
            lo,
            hi,
            labels,
            cells: self.cells,
        })
    }

    /// Measures of the cells, indexed by label.
    pub fn cell_measures(&self, mu: &BernoulliVector) -> Result<Vec<ExactRational>> {
        mu.check_alphabet(&self.modulus)?;
        let len = self.len();
        let denom: BigInt = mu.denom.pow(len as u32).into();
        let mut acc = vec![BigUint::from(0u32); self.cells];
        for_each_word(self.modulus.value(), len, |x| {
            acc[self.label_of(x) as usize] += mu.word_weight(x);
        });
        Ok(acc
            .into_iter()
            .map(|w| ExactRational::new(w.into(), denom.clone()))
            .collect())
    }
}

fn window_len(lo: i64, hi: i64) -> Result<usize> {
    if hi < lo {
        return Err(Error::Parse(format!("empty window [{lo}, {hi}]")));
    }
    Ok((hi - lo + 1) as usize)
}

fn same_modulus(p: &Partition, q: &Partition) -> Result<()> {
    if p.modulus != q.modulus {
        return Err(Error::ModulusMismatch {
            left: p.modulus.value(),
            right: q.modulus.value(),
        });
    }
    Ok(())
}

/// Outcome of the finite weak-Bernoulli computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakBernoulliReport {
    /// `sum |mu(C ∩ D) - mu(C) mu(D)|` between past and future joins.
    pub epsilon: ExactRational,
    /// Window of `⋁_{k=0}^{n} T^{-k} ξ(-i, i)`.
    pub past_window: (i64, i64),
    /// Window of `⋁_{k=0}^{n} T^{k+N} ξ(-i, i)`.
    pub future_window: (i64, i64),
    /// Hull of the formal windows `[k l - i, k r + i]` of the past join.
    pub past_bound: (i64, i64),
    /// Hull of the formal windows of the future join under the inverse rule.
    pub future_bound: (i64, i64),
    /// `([-i, n r + i], [-(2r - l)(N + n) - i, -r N + i])`, reported for
    /// right-permutative invertible rules over `Z_{p^2}` with `l > 0`.
    pub prime_square_bounds: Option<((i64, i64), (i64, i64))>,
}

/// Cell and joint weights accumulated over the coordinates of both partitions.
struct Tally<W> {
    left: Vec<W>,
    right: Vec<W>,
    joint: HashMap<(u32, u32), W>,
}

fn tally<W>(
    p: &Partition,
    q: &Partition,
    len: usize,
    (p_off, q_off): (usize, usize),
    mut weight: impl FnMut(&[u64]) -> W,
) -> Tally<W>
where
    W: Clone + Default + for<'a> AddAssign<&'a W>,
{
    let mut t = Tally {
        left: vec![W::default(); p.cells],
        right: vec![W::default(); q.cells],
        joint: HashMap::new(),
    };
    for_each_word(p.modulus.value(), len, |x| {
        let w = weight(x);
        let c = p.label_of(&x[p_off..p_off + p.len()]);
        let d = q.label_of(&x[q_off..q_off + q.len()]);
        t.left[c as usize] += &w;
        t.right[d as usize] += &w;
        *t.joint.entry((c, d)).or_default() += &w;
    });
    t
}

fn to_big<W: Into<BigUint>>(t: Tally<W>) -> Tally<BigUint> {
    Tally {
        left: t.left.into_iter().map(Into::into).collect(),
        right: t.right.into_iter().map(Into::into).collect(),
        joint: t.joint.into_iter().map(|(k, v)| (k, v.into())).collect(),
    }
}

impl Lab {
    /// `ξ(-i, i)`: each word on `[-i, i]` is its own cell.
    pub fn coordinate_partition(&self, i: u64, modulus: &Modulus) -> Result<Partition> {
        let i = i as i64;
        Partition::by_coordinates(self, modulus.clone(), -i, i)
    }

    /// `T^{-n} P`: cells are preimages of `P`'s cells under `f^n`, on the
    /// window `[lo + l_n, hi + r_n]` of the trimmed iterate. Empty preimages
    /// are dropped.
    pub fn pullback_partition(&self, rule: &LocalRule, p: &Partition, n: u64) -> Result<Partition> {
        if rule.modulus() != &p.modulus {
            return Err(Error::ModulusMismatch {
                left: rule.modulus().value(),
                right: p.modulus.value(),
            });
        }
        if n == 0 {
            return Ok(p.clone());
        }
        let iterate = rule.iterate(n)?;
        let lo = p.lo + iterate.l();
        let hi = p.hi + iterate.r();
        let len = window_len(lo, hi)?;
        let m = p.modulus.value();
        self.word_count(m, len)?;
        let width = iterate.width();
        let own = p.len();
        let mut image = vec![0u64; own];
        let mut raw = Vec::new();
        for_each_word(m, len, |x| {
            for (t, y) in image.iter_mut().enumerate() {
                *y = iterate.eval(&x[t..t + width]);
            }
            raw.push(p.label_of(&image) as u64);
        });
        Ok(Partition::from_raw_labels(p.modulus.clone(), lo, hi, raw))
    }

    /// Common refinement `P ⋁ Q` on the hull of the two windows.
    pub fn join_partitions(&self, p: &Partition, q: &Partition) -> Result<Partition> {
        same_modulus(p, q)?;
        let lo = p.lo.min(q.lo);
        let hi = p.hi.max(q.hi);
        let pe = p.extend(self, lo, hi)?;
        let qe = q.extend(self, lo, hi)?;
        let raw = pe
            .labels
            .iter()
            .zip(&qe.labels)
            .map(|(&a, &b)| ((a as u64) << 32) | b as u64);
        Ok(Partition::from_raw_labels(p.modulus.clone(), lo, hi, raw))
    }

    /// `sum_{C in P, D in Q} |mu(C ∩ D) - mu(C) mu(D)|`, exactly.
    pub fn epsilon_independence(
        &self,
        p: &Partition,
        q: &Partition,
        mu: &BernoulliVector,
    ) -> Result<ExactRational> {
        same_modulus(p, q)?;
        mu.check_alphabet(&p.modulus)?;
        // enumerate only coordinates read by P or Q; the product measure
        // integrates any gap between the windows to 1
        let (first, second) = if p.lo <= q.lo { (p, q) } else { (q, p) };
        let overlap = (first.hi - second.lo + 1).max(0) as usize;
        let second_extra = second.len().saturating_sub(overlap);
        let len = first.len() + second_extra;
        let second_off = first.len().min((second.lo - first.lo) as usize);
        let offsets = if p.lo <= q.lo {
            (0, second_off)
        } else {
            (second_off, 0)
        };
        self.word_count(p.modulus.value(), len)?;

        let t = if mu.is_uniform() {
            to_big(tally(p, q, len, offsets, |_| 1u64))
        } else {
            tally(p, q, len, offsets, |x| mu.word_weight(x))
        };

        // all weights are numerators over D = denom^len; scale terms by D^2
        let d: BigInt = mu.denom.pow(len as u32).into();
        let d2 = &d * &d;
        let mut total = BigInt::from(0);
        let mut covered = BigInt::from(0);
        for (&(c, e), joint) in &t.joint {
            let prod: BigInt = BigInt::from(&t.left[c as usize] * &t.right[e as usize]);
            let joint: BigInt = BigInt::from(joint.clone()) * &d;
            total += (joint - &prod).abs();
            covered += prod;
        }
        // pairs with empty intersection contribute mu(C) mu(D) each, and all
        // pairs together sum to 1
        total += d2.clone() - covered;
        Ok(ExactRational::new(total, d2))
    }

    /// Finite weak-Bernoulli evidence for `ξ(-i, i)`: the ε-independence of
    /// `⋁_{k=0}^{n} T^{-k} ξ(-i,i)` and `⋁_{k=0}^{n} T^{k+N} ξ(-i,i)`, the latter
    /// built from pullbacks under the inverse rule.
    pub fn weak_bernoulli_check(
        &self,
        rule: &LocalRule,
        i: u64,
        n: u64,
        gap: u64,
        mu: &BernoulliVector,
    ) -> Result<WeakBernoulliReport> {
        let inverse = rule.inverse()?;
        let base = self.coordinate_partition(i, rule.modulus())?;

        let mut past = base.clone();
        for k in 1..=n {
            past = self.join_partitions(&past, &self.pullback_partition(rule, &base, k)?)?;
        }
        let mut future = self.pullback_partition(&inverse, &base, gap)?;
        for k in 1..=n {
            let next = self.pullback_partition(&inverse, &base, k + gap)?;
            future = self.join_partitions(&future, &next)?;
        }
        let epsilon = self.epsilon_independence(&past, &future, mu)?;

        let ii = i as i64;
        let hull = |f: &LocalRule, ks: std::ops::RangeInclusive<u64>| {
            ks.map(|k| {
                let (a, b) = f.formal_iterate_window(k);
                (a - ii, b + ii)
            })
            .fold((i64::MAX, i64::MIN), |acc, w| {
                (acc.0.min(w.0), acc.1.max(w.1))
            })
        };
        let past_bound = hull(rule, 0..=n);
        let future_bound = hull(&inverse, gap..=gap + n);

        let md = rule.modulus();
        let prime_square = md.is_prime_power() && md.factors()[0].1 == 2;
        let prime_square_bounds = (prime_square && rule.permutativity().right && rule.l() > 0)
            .then(|| {
                let (l, r) = (rule.l(), rule.r());
                let (nn, gg) = (n as i64, gap as i64);
                (
                    (-ii, nn * r + ii),
                    (-(2 * r - l) * (gg + nn) - ii, -r * gg + ii),
                )
            });

        Ok(WeakBernoulliReport {
            epsilon,
            past_window: past.window(),
            future_window: future.window(),
            past_bound,
            future_bound,
            prime_square_bounds,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Zero;
    use proptest::prelude::*;

    fn md(m: u64) -> Modulus {
        Modulus::new(m).unwrap()
    }

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n.into(), d.into())
    }

    fn example_rule() -> LocalRule {
        LocalRule::new(md(4), 1, vec![2, 2, 1]).unwrap()
    }

    /// Direct double sum over all cell pairs, measuring each intersection by
    /// enumeration; independent of the tally shortcut.
    fn epsilon_oracle(p: &Partition, q: &Partition, mu: &BernoulliVector) -> ExactRational {
        let lo = p.lo.min(q.lo);
        let hi = p.hi.max(q.hi);
        let len = (hi - lo + 1) as usize;
        let m = p.modulus.value();
        let mut cells_p = vec![ExactRational::zero(); p.cells];
        let mut cells_q = vec![ExactRational::zero(); q.cells];
        let mut joint = vec![vec![ExactRational::zero(); q.cells]; p.cells];
        for_each_word(m, len, |x| {
            let w = mu.word_measure(x);
            let c = p.label_of(&x[(p.lo - lo) as usize..=(p.hi - lo) as usize]) as usize;
            let d = q.label_of(&x[(q.lo - lo) as usize..=(q.hi - lo) as usize]) as usize;
            cells_p[c] += &w;
            cells_q[d] += &w;
            joint[c][d] += &w;
        });
        let mut total = ExactRational::zero();
        for (c, row) in joint.iter().enumerate() {
            for (d, j) in row.iter().enumerate() {
                total += (j - &cells_p[c] * &cells_q[d]).abs();
            }
        }
        total
    }

    #[test]
    fn coordinate_partitions() {
        let lab = Lab::default();
        let xi = lab.coordinate_partition(0, &md(4)).unwrap();
        assert_eq!(xi.cell_count(), 4);
        assert_eq!(xi.window(), (0, 0));
        let xi1 = lab.coordinate_partition(1, &md(2)).unwrap();
        assert_eq!(xi1.cell_count(), 8);
        let u = BernoulliVector::uniform(&md(2));
        assert!(xi1.cell_measures(&u).unwrap().iter().all(|c| *c == q(1, 8)));
        assert!(Lab::with_guard(10).coordinate_partition(1, &md(4)).is_err());
    }

    #[test]
    fn pullbacks() {
        let lab = Lab::default();
        let xi = lab.coordinate_partition(0, &md(4)).unwrap();
        let id = LocalRule::identity(md(4));
        assert_eq!(lab.pullback_partition(&id, &xi, 3).unwrap(), xi);

        let pulled = lab.pullback_partition(&example_rule(), &xi, 2).unwrap();
        let by6 = Partition::by_coordinates(&lab, md(4), 6, 6).unwrap();
        assert_eq!(pulled, by6);

        let u = BernoulliVector::uniform(&md(4));
        let one = lab.pullback_partition(&example_rule(), &xi, 1).unwrap();
        assert_eq!(one.window(), (1, 3));
        assert_eq!(one.cell_count(), 4);
        assert!(one.cell_measures(&u).unwrap().iter().all(|c| *c == q(1, 4)));
    }

    #[test]
    fn joins() {
        let lab = Lab::default();
        let xi = lab.coordinate_partition(0, &md(4)).unwrap();
        assert_eq!(lab.join_partitions(&xi, &xi).unwrap(), xi);
        let at1 = Partition::by_coordinates(&lab, md(4), 1, 1).unwrap();
        let joined = lab.join_partitions(&xi, &at1).unwrap();
        assert_eq!(
            joined,
            Partition::by_coordinates(&lab, md(4), 0, 1).unwrap()
        );
        let other = lab.join_partitions(&at1, &xi).unwrap();
        assert_eq!(other.cell_count(), joined.cell_count());
        assert!(lab
            .join_partitions(&xi, &lab.coordinate_partition(0, &md(3)).unwrap())
            .is_err());
    }

    #[test]
    fn epsilon_examples() {
        let lab = Lab::default();
        let u = BernoulliVector::uniform(&md(4));
        let xi = lab.coordinate_partition(0, &md(4)).unwrap();
        assert_eq!(lab.epsilon_independence(&xi, &xi, &u).unwrap(), q(3, 2));
        let at3 = Partition::by_coordinates(&lab, md(4), 3, 3).unwrap();
        assert_eq!(lab.epsilon_independence(&xi, &at3, &u).unwrap(), q(0, 1));
        let trivial = Partition::trivial(&lab, md(4), -1, 1).unwrap();
        assert_eq!(
            lab.epsilon_independence(&trivial, &xi, &u).unwrap(),
            q(0, 1)
        );
        let v = BernoulliVector::new(vec![q(1, 2), q(1, 4), q(1, 8), q(1, 8)]).unwrap();
        assert_eq!(
            lab.epsilon_independence(&xi, &xi, &v).unwrap(),
            epsilon_oracle(&xi, &xi, &v)
        );
        assert_eq!(lab.epsilon_independence(&xi, &at3, &v).unwrap(), q(0, 1));
    }

    #[test]
    fn weak_bernoulli_examples() {
        let lab = Lab::default();
        let u = BernoulliVector::uniform(&md(4));
        let rep = lab
            .weak_bernoulli_check(&example_rule(), 0, 0, 2, &u)
            .unwrap();
        assert_eq!(rep.epsilon, q(0, 1));
        assert_eq!(rep.past_window, (0, 0));
        assert_eq!(rep.future_window, (-6, -6));
        assert_eq!(rep.prime_square_bounds, Some(((0, 0), (-10, -6))));

        let rep = lab
            .weak_bernoulli_check(&example_rule(), 0, 1, 2, &u)
            .unwrap();
        let ((pl, ph), (fl, fh)) = rep.prime_square_bounds.unwrap();
        assert!(rep.past_window.0 >= pl && rep.past_window.1 <= ph);
        assert!(rep.future_window.0 >= fl && rep.future_window.1 <= fh);
        assert!(rep.past_window.0 >= rep.past_bound.0 && rep.past_window.1 <= rep.past_bound.1);
        assert_eq!(rep.epsilon, q(0, 1));

        let id = LocalRule::identity(md(4));
        let rep = lab.weak_bernoulli_check(&id, 0, 0, 3, &u).unwrap();
        assert_eq!(rep.epsilon, q(3, 2));

        let bi = LocalRule::new(md(3), -1, vec![2, 2, 1]).unwrap();
        assert_eq!(
            lab.weak_bernoulli_check(&bi, 0, 0, 1, &BernoulliVector::uniform(&md(3))),
            Err(Error::NotInvertible(3))
        );
    }

    fn arb_partition(m: u64) -> impl Strategy<Value = Partition> {
        (
            -2i64..2,
            0i64..2,
            1u32..6,
            proptest::collection::vec(0u32..6, 27),
        )
            .prop_map(move |(lo, w, k, raw)| {
                let hi = lo + w;
                let size = (m as usize).pow((w + 1) as u32);
                Partition::from_raw_labels(
                    md(m),
                    lo,
                    hi,
                    raw[..size].iter().map(|&x| (x % k) as u64),
                )
            })
    }

    proptest! {
        #[test]
        fn epsilon_properties(p in arb_partition(3), q2 in arb_partition(3), uniform in any::<bool>()) {
            let lab = Lab::default();
            let mu = if uniform {
                BernoulliVector::uniform(&md(3))
            } else {
                BernoulliVector::new(vec![q(1, 2), q(1, 3), q(1, 6)]).unwrap()
            };
            let e = lab.epsilon_independence(&p, &q2, &mu).unwrap();
            prop_assert_eq!(&e, &lab.epsilon_independence(&q2, &p, &mu).unwrap());
            prop_assert_eq!(&e, &epsilon_oracle(&p, &q2, &mu));
            prop_assert!(e >= q(0, 1) && e <= q(2, 1));
            if p.hi < q2.lo || q2.hi < p.lo {
                prop_assert_eq!(e, q(0, 1));
            }
        }
    }
}
