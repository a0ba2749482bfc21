//! Applying local rules to finite configurations.
//!
//! Cyclic configurations wrap indices mod `N`. Words are finite blocks with a
//! start coordinate; applying a rule to a word keeps only the outputs whose
//! whole neighbourhood lies inside the block.

use crate::error::{Error, Result};
use crate::modular::Modulus;
use crate::rule::LocalRule;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicConfig {
    modulus: Modulus,
    cells: Vec<u64>,
}

impl CyclicConfig {
    pub fn new(modulus: Modulus, cells: Vec<u64>) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::Parse("empty configuration".into()));
        }
        for &c in &cells {
            modulus.check_residue(c)?;
        }
        Ok(CyclicConfig { modulus, cells })
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn cells(&self) -> &[u64] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// A block `j_0, ..., j_s` placed at coordinates `start, ..., start + s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    start: i64,
    symbols: Vec<u64>,
}

impl Word {
    pub fn new(start: i64, symbols: Vec<u64>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::Parse("empty word".into()));
        }
        Ok(Word { start, symbols })
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    /// Last coordinate covered, `start + s`.
    pub fn end(&self) -> i64 {
        self.start + self.symbols.len() as i64 - 1
    }

    pub fn symbols(&self) -> &[u64] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Symbol at an absolute coordinate, if covered.
    pub fn at(&self, pos: i64) -> Option<u64> {
        if pos < self.start || pos > self.end() {
            None
        } else {
            Some(self.symbols[(pos - self.start) as usize])
        }
    }

    pub fn check_alphabet(&self, modulus: &Modulus) -> Result<()> {
        self.symbols
            .iter()
            .try_for_each(|&s| modulus.check_residue(s).map(|_| ()))
    }
}

fn check_modulus(rule: &LocalRule, modulus: &Modulus) -> Result<()> {
    if rule.modulus() != modulus {
        return Err(Error::ModulusMismatch {
            left: rule.modulus().value(),
            right: modulus.value(),
        });
    }
    Ok(())
}

/// `y_n = sum lambda_i x_{(n+i) mod N}`.
pub fn apply_cyclic(rule: &LocalRule, x: &CyclicConfig) -> Result<CyclicConfig> {
    check_modulus(rule, &x.modulus)?;
    let n_cells = x.len();
    if n_cells < rule.width() {
        return Err(Error::ConfigTooShort {
            len: n_cells,
            width: rule.width(),
        });
    }
    let md = &x.modulus;
    let m = md.value() as u128;
    let n = n_cells as i64;
    let cells = (0..n)
        .map(|pos| {
            let acc = rule
                .coeffs()
                .iter()
                .enumerate()
                .fold(0u128, |acc, (t, &c)| {
                    let idx = (pos + rule.l() + t as i64).rem_euclid(n) as usize;
                    (acc + c as u128 * x.cells[idx] as u128) % m
                });
            acc as u64
        })
        .collect();
    Ok(CyclicConfig {
        modulus: md.clone(),
        cells,
    })
}

/// `(sigma^t x)_i = x_{i+t}` with indices mod `N`.
pub fn shift_cyclic(x: &CyclicConfig, t: i64) -> CyclicConfig {
    let n = x.len() as i64;
    let cells = (0..n)
        .map(|i| x.cells[(i + t).rem_euclid(n) as usize])
        .collect();
    CyclicConfig {
        modulus: x.modulus.clone(),
        cells,
    }
}

/// Image of a word on the positions `[a - l, a + s - r]` whose
/// neighbourhoods lie inside the word.
pub fn apply_window(rule: &LocalRule, w: &Word) -> Result<Word> {
    if w.len() < rule.width() {
        return Err(Error::WindowTooShort {
            len: w.len(),
            width: rule.width(),
        });
    }
    w.check_alphabet(rule.modulus())?;
    let symbols = w
        .symbols
        .windows(rule.width())
        .map(|nb| rule.eval(nb))
        .collect();
    Ok(Word {
        start: w.start - rule.l(),
        symbols,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn md(m: u64) -> Modulus {
        Modulus::new(m).unwrap()
    }

    fn cfg(m: u64, c: &[u64]) -> CyclicConfig {
        CyclicConfig::new(md(m), c.to_vec()).unwrap()
    }

    fn example_rule() -> LocalRule {
        LocalRule::new(md(4), 1, vec![2, 2, 1]).unwrap()
    }

    #[test]
    fn cyclic_examples() {
        let x = cfg(4, &[1, 3, 2, 0]);
        assert_eq!(apply_cyclic(&LocalRule::identity(md(4)), &x).unwrap(), x);
        assert_eq!(
            apply_cyclic(&example_rule(), &cfg(4, &[1, 0, 0, 0])).unwrap(),
            cfg(4, &[0, 1, 2, 2])
        );
        assert_eq!(
            apply_cyclic(&LocalRule::shift(md(5), 1), &cfg(5, &[1, 2, 3, 4])).unwrap(),
            cfg(5, &[2, 3, 4, 1])
        );
        assert_eq!(
            apply_cyclic(&example_rule(), &cfg(4, &[1, 0])),
            Err(Error::ConfigTooShort { len: 2, width: 3 })
        );
    }

    #[test]
    fn shifts() {
        let x = cfg(4, &[1, 0, 0, 0]);
        assert_eq!(shift_cyclic(&x, 0), x);
        assert_eq!(shift_cyclic(&x, 1), cfg(4, &[0, 0, 0, 1]));
        assert_eq!(shift_cyclic(&x, -1), cfg(4, &[0, 1, 0, 0]));
    }

    #[test]
    fn window_examples() {
        let w = Word::new(1, vec![0, 0, 0]).unwrap();
        assert_eq!(
            apply_window(&example_rule(), &w).unwrap(),
            Word::new(0, vec![0]).unwrap()
        );
        let w = Word::new(1, vec![1, 0, 0]).unwrap();
        assert_eq!(
            apply_window(&example_rule(), &w).unwrap(),
            Word::new(0, vec![2]).unwrap()
        );
        let w = Word::new(-3, vec![1, 2, 3]).unwrap();
        assert_eq!(apply_window(&LocalRule::identity(md(4)), &w).unwrap(), w);
        assert_eq!(
            apply_window(&example_rule(), &Word::new(0, vec![1, 1]).unwrap()),
            Err(Error::WindowTooShort { len: 2, width: 3 })
        );
    }

    fn arb_rule() -> impl Strategy<Value = LocalRule> {
        (
            2u64..10,
            -3i64..3,
            proptest::collection::vec(any::<u64>(), 1..5),
        )
            .prop_map(|(m, l, raw)| {
                let mut c: Vec<u64> = raw.iter().map(|x| x % m).collect();
                if c.iter().all(|&x| x == 0) {
                    c[0] = 1;
                }
                LocalRule::new(md(m), l, c).unwrap()
            })
    }

    fn config_for(rule: &LocalRule, raw: &[u64]) -> CyclicConfig {
        let m = rule.modulus().value();
        CyclicConfig::new(rule.modulus().clone(), raw.iter().map(|x| x % m).collect()).unwrap()
    }

    proptest! {
        #[test]
        fn commutes_with_shift(f in arb_rule(), raw in proptest::collection::vec(any::<u64>(), 5..20), t in -5i64..5) {
            let x = config_for(&f, &raw);
            prop_assert_eq!(
                apply_cyclic(&f, &shift_cyclic(&x, t)).unwrap(),
                shift_cyclic(&apply_cyclic(&f, &x).unwrap(), t)
            );
        }

        #[test]
        fn shift_group_law(raw in proptest::collection::vec(0u64..4, 1..12), a in -20i64..20, b in -20i64..20) {
            let x = cfg(4, &raw);
            prop_assert_eq!(shift_cyclic(&shift_cyclic(&x, a), b), shift_cyclic(&x, a + b));
        }

        #[test]
        fn iterate_matches_repeated_application(f in arb_rule(), n in 1u64..=6, raw in proptest::collection::vec(any::<u64>(), 24..40)) {
            let x = config_for(&f, &raw);
            let Ok(fnn) = f.iterate(n) else { return Ok(()) };
            let mut y = x.clone();
            for _ in 0..n {
                y = apply_cyclic(&f, &y).unwrap();
            }
            prop_assert_eq!(apply_cyclic(&fnn, &x).unwrap(), y);
        }

        #[test]
        fn window_agrees_with_cyclic(f in arb_rule(), raw in proptest::collection::vec(any::<u64>(), 12..20)) {
            // on a long enough cycle the inner outputs of apply_window match
            let x = config_for(&f, &raw);
            let y = apply_cyclic(&f, &x).unwrap();
            let w = Word::new(0, x.cells().to_vec()).unwrap();
            let img = apply_window(&f, &w).unwrap();
            for (t, &s) in img.symbols().iter().enumerate() {
                let pos = (img.start() + t as i64).rem_euclid(x.len() as i64) as usize;
                prop_assert_eq!(s, y.cells()[pos]);
            }
        }
    }
}
