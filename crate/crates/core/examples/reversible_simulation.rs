//! Runs a rule forward on a cyclic configuration, then runs its inverse back.

use lca::{apply_cyclic, CyclicConfig, LocalRule, Modulus};

fn show(t: i64, x: &CyclicConfig) {
    let row: String = x
        .cells()
        .iter()
        .map(|c| char::from_digit(*c as u32, 36).unwrap())
        .collect();
    println!("{t:>3} {row}");
}

fn main() -> lca::Result<()> {
    let md = Modulus::new(4)?;
    let f = LocalRule::new(md.clone(), 1, vec![2, 2, 1])?;
    let g = f.inverse()?;
    let mut cells = vec![0u64; 40];
    cells[20] = 1;
    cells[21] = 3;
    let start = CyclicConfig::new(md, cells)?;

    let steps = 12;
    let mut x = start.clone();
    show(0, &x);
    for t in 1..=steps {
        x = apply_cyclic(&f, &x)?;
        show(t, &x);
    }
    for t in (0..steps).rev() {
        x = apply_cyclic(&g, &x)?;
        show(t, &x);
    }
    println!("recovered: {}", x == start);
    Ok(())
}
