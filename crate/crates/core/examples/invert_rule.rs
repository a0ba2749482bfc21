//! Inverts `f(x_1, x_2, x_3) = 2x_1 + 2x_2 + x_3 (mod 4)` and checks the result.
//!
//! cargo run --example invert_rule [-- "m=9;l=0;coeffs=3,1"]

use lca::notation::parse_rule_arg;
use lca::{LocalRule, RuleSpec};

fn main() -> lca::Result<()> {
    let arg = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "m=4;l=1;coeffs=2,2,1".into());
    let f: LocalRule = parse_rule_arg(&arg)?;
    println!("f     = {}", RuleSpec::from(&f));
    println!("F(X)  = {}", f.to_fps());

    let g = f.inverse()?;
    println!("g     = {}", RuleSpec::from(&g));
    println!("G(X)  = {}", g.to_fps());
    println!("F*G   = {}", f.to_fps().mul(&g.to_fps())?);
    println!("f o g = {}", RuleSpec::from(&f.compose(&g)?.trimmed()));
    Ok(())
}
