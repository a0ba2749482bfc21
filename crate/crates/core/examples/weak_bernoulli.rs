//! ε-independence of coordinate partitions and of the past/future joins.

use lca::notation::format_rational;
use lca::{BernoulliVector, Lab, LocalRule, Modulus, Partition};

fn main() -> lca::Result<()> {
    let md = Modulus::new(4)?;
    let mu = BernoulliVector::uniform(&md);
    let lab = Lab::from_env()?;

    let xi = lab.coordinate_partition(0, &md)?;
    println!(
        "eps(xi, xi)         = {}",
        format_rational(&lab.epsilon_independence(&xi, &xi, &mu)?)
    );
    let far = Partition::by_coordinates(&lab, md.clone(), 3, 4)?;
    println!(
        "eps(xi, xi[3..4])   = {}",
        format_rational(&lab.epsilon_independence(&xi, &far, &mu)?)
    );

    let f = LocalRule::new(md.clone(), 1, vec![2, 2, 1])?;
    for (i, n, gap) in [(0, 0, 1), (0, 0, 2), (0, 1, 2), (1, 1, 3)] {
        let rep = lab.weak_bernoulli_check(&f, i, n, gap, &mu)?;
        println!(
            "i={i} n={n} N={gap}: eps={:<6} past={:?} future={:?} bounds={:?}",
            format_rational(&rep.epsilon),
            rep.past_window,
            rep.future_window,
            rep.prime_square_bounds
        );
    }
    Ok(())
}
