//! Counts invertible rules among all rules of window `[0, 2]` for several moduli
//! and cross-checks the unit criterion against bijectivity on small cycles.

use lca::{apply_cyclic, CyclicConfig, LocalRule, Modulus};
use std::collections::HashSet;

fn injective_on_cycle(f: &LocalRule, n: usize) -> bool {
    let m = f.modulus().value();
    let total = m.pow(n as u32);
    let mut seen = HashSet::new();
    for idx in 0..total {
        let cells = (0..n).map(|i| idx / m.pow(i as u32) % m).collect();
        let x = CyclicConfig::new(f.modulus().clone(), cells).unwrap();
        if !seen.insert(apply_cyclic(f, &x).unwrap().cells().to_vec()) {
            return false;
        }
    }
    true
}

fn main() -> lca::Result<()> {
    for m in [2u64, 3, 4, 5, 6] {
        let md = Modulus::new(m)?;
        let (mut rules, mut invertible, mut agree) = (0, 0, 0);
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let Ok(f) = LocalRule::new(md.clone(), 0, vec![a, b, c]) else {
                        continue;
                    };
                    rules += 1;
                    let inv = f.is_invertible();
                    invertible += inv as u32;
                    // invertible rules are bijective on every cycle; a non-invertible
                    // one may still be bijective on the short cycles tried
                    let bijective = (3..=6).all(|n| injective_on_cycle(&f, n));
                    agree += (inv == bijective) as u32;
                }
            }
        }
        println!("m={m:>2} ({md}): {invertible:>3}/{rules:<3} invertible, bijective on cycles 3..6 iff invertible for {agree}");
    }
    Ok(())
}
