//! Correlation table `mu(A ∩ T^{-n} B)` for a rule and its inverse.

use lca::notation::format_rational;
use lca::{BernoulliVector, Lab, LocalRule, MixingTable, Modulus, Word};

fn print(label: &str, t: &MixingTable) {
    println!("{label}: {}", lca::RuleSpec::from(&t.rule));
    for row in &t.rows {
        println!(
            "  n={} corr={:<7} prod={:<7} equal={:<5} formal={:?} disjoint={}",
            row.n,
            format_rational(&row.correlation),
            format_rational(&row.product),
            row.equal,
            row.formal_window,
            row.disjoint
        );
    }
    println!(
        "  first_stable={:?} window_bound_holds={}",
        t.first_stable(),
        t.window_bound_holds()
    );
}

fn main() -> lca::Result<()> {
    let md = Modulus::new(4)?;
    let f = LocalRule::new(md.clone(), 1, vec![2, 2, 1])?;
    let a = Word::new(0, vec![0, 0, 0, 0])?;
    let b = Word::new(0, vec![0])?;
    let report = Lab::from_env()?.check_strong_mixing_window(
        &f,
        &a,
        &b,
        6,
        &BernoulliVector::uniform(&md),
    )?;
    print("T", &report.forward);
    if let Some(inv) = &report.inverse {
        print("T^-1", inv);
    }
    Ok(())
}
