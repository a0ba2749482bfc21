//! Checks `mu(T^{-1} C) = mu(C)` for every cylinder of length up to 3 under the
//! uniform measure, and shows a preimage explicitly.

use lca::notation::format_rational;
use lca::{BernoulliVector, Lab, LocalRule, Measurable, Modulus, Word};

fn main() -> lca::Result<()> {
    let md = Modulus::new(4)?;
    let f = LocalRule::new(md.clone(), 1, vec![2, 2, 1])?;
    let mu = BernoulliVector::uniform(&md);
    let lab = Lab::from_env()?;

    let c = Word::new(0, vec![1, 3])?;
    let pre = lab.preimage_cylinder(&f, &c)?;
    println!(
        "T^-1 [a=0; 1,3] lives on {:?} with {} words:",
        pre.window(),
        pre.len()
    );
    for w in pre.cylinders().take(4) {
        println!("  {:?} at {}", w.symbols(), w.start());
    }
    println!("  ...");

    let mut checked = 0;
    for len in 1..=3u32 {
        for idx in 0..4u64.pow(len) {
            let symbols = (0..len).map(|i| idx / 4u64.pow(i) % 4).collect();
            let c = Word::new(0, symbols)?;
            let pre = lab.preimage_cylinder(&f, &c)?;
            assert_eq!(pre.measure(&mu), c.measure(&mu));
            checked += 1;
        }
    }
    println!("{checked} cylinders: measure preserved");

    let v = BernoulliVector::new(
        ["1/2", "1/4", "1/8", "1/8"]
            .map(|s| s.parse().unwrap())
            .to_vec(),
    )?;
    let c = Word::new(0, vec![0])?;
    let pre = lab.preimage_cylinder(&f, &c)?;
    println!(
        "non-uniform: mu(C) = {}, mu(T^-1 C) = {}",
        format_rational(&c.measure(&v)),
        format_rational(&pre.measure(&v))
    );
    Ok(())
}
