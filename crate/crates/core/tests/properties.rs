//! Cross-module properties on random rules.

use lca::{
    apply_cyclic, apply_window, shift_cyclic, BernoulliVector, CyclicConfig, Lab, LocalRule,
    Measurable, Modulus, Word,
};
use proptest::prelude::*;

/// Random rule over `m` with a unit at one end, so it is permutative.
fn arb_permutative() -> impl Strategy<Value = LocalRule> {
    (2u64..=9, -3i64..=3, 1usize..=4, any::<bool>()).prop_flat_map(|(m, l, w, right)| {
        proptest::collection::vec(0..m, w).prop_map(move |mut coeffs| {
            let md = Modulus::new(m).unwrap();
            let end = if right { w - 1 } else { 0 };
            if !md.is_unit(coeffs[end]) {
                coeffs[end] = 1;
            }
            LocalRule::new(md, l, coeffs).unwrap()
        })
    })
}

/// Random invertible rule: unit at the right end, other coefficients in the radical.
fn arb_invertible() -> impl Strategy<Value = LocalRule> {
    (
        prop::sample::select(vec![4u64, 8, 9, 12, 18, 25, 36]),
        -3i64..=3,
        1usize..=4,
    )
        .prop_flat_map(|(m, l, w)| {
            proptest::collection::vec(0..m, w).prop_map(move |raw| {
                let md = Modulus::new(m).unwrap();
                let rad = md.radical();
                let mut coeffs: Vec<u64> = raw.iter().map(|&c| md.mul(c, rad)).collect();
                let units: Vec<u64> = (1..m).filter(|&u| md.is_unit(u)).collect();
                coeffs[w - 1] = units[raw[w - 1] as usize % units.len()];
                LocalRule::new(md, l, coeffs).unwrap()
            })
        })
}

fn config(m: u64, cells: &[u64]) -> CyclicConfig {
    CyclicConfig::new(
        Modulus::new(m).unwrap(),
        cells.iter().map(|c| c % m).collect(),
    )
    .unwrap()
}

proptest! {
    #[test]
    fn inverse_undoes_rule_on_cycles(f in arb_invertible(), cells in proptest::collection::vec(0u64..1000, 24)) {
        let g = f.inverse().unwrap();
        let x = config(f.modulus().value(), &cells);
        prop_assert_eq!(apply_cyclic(&g, &apply_cyclic(&f, &x).unwrap()).unwrap(), x.clone());
        prop_assert_eq!(apply_cyclic(&f, &apply_cyclic(&g, &x).unwrap()).unwrap(), x);
        prop_assert!(f.compose(&g).unwrap().trimmed().to_fps().is_one());
        prop_assert_eq!(g.inverse().unwrap().trimmed(), f.trimmed());
    }

    #[test]
    fn rules_commute_with_shift(f in arb_permutative(), t in -10i64..10, cells in proptest::collection::vec(0u64..1000, 16)) {
        let x = config(f.modulus().value(), &cells);
        prop_assert_eq!(
            apply_cyclic(&f, &shift_cyclic(&x, t)).unwrap(),
            shift_cyclic(&apply_cyclic(&f, &x).unwrap(), t)
        );
    }

    #[test]
    fn preimages_preserve_uniform_measure(f in arb_permutative(), start in -3i64..3, raw in proptest::collection::vec(0u64..100, 1..=3)) {
        let m = f.modulus().value();
        let c = Word::new(start, raw.iter().map(|s| s % m).collect()).unwrap();
        let lab = Lab::default();
        let u = BernoulliVector::uniform(f.modulus());
        let pre = lab.preimage_cylinder(&f, &c).unwrap();
        prop_assert_eq!(pre.measure(&u), c.measure(&u));
        for w in pre.cylinders() {
            let image = apply_window(&f, &w).unwrap();
            prop_assert_eq!(image.symbols(), c.symbols());
            prop_assert_eq!(image.start(), c.start());
        }
    }
}
