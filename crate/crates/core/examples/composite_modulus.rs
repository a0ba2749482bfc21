//! Inversion over a composite modulus: split by CRT, invert each prime-power
//! component, recombine.

use lca::{crt_split, LocalRule, Modulus, RuleSpec};

fn main() -> lca::Result<()> {
    let md = Modulus::new(60)?;
    // p1 p2 p3 (a x_0 + b x_1) + u x_2 with u a unit
    let f = LocalRule::new(md.clone(), 0, vec![30 * 7 % 60, 30 * 11 % 60, 7])?;
    println!("f = {}  over {}", RuleSpec::from(&f), md);
    let verdict = f.invertibility();
    for units in &verdict.per_prime {
        println!(
            "  prime {}: unit coefficients at {:?}",
            units.prime, units.unit_indices
        );
    }
    for q in md.prime_powers() {
        let component = f.to_fps().reduce_to(&Modulus::new(q)?)?;
        println!(
            "  mod {q:>2}: F = {component},  G = {}",
            component.invert()?
        );
    }
    let g = f.inverse()?;
    println!("g = {}", RuleSpec::from(&g));
    println!("F*G = {}", f.to_fps().mul(&g.to_fps())?);
    println!("crt_split(59, 60) = {:?}", crt_split(59, &md));
    Ok(())
}
