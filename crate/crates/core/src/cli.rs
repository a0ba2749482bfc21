//! The `lca` command line. Every command writes exact, deterministic text.
//!
//! Exit codes: 0 success, 2 input error, 3 enumeration guard exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::dynamics::apply_cyclic;
use crate::error::{Error, Result};
use crate::measure::{BernoulliVector, Lab, MixingTable};
use crate::notation::{
    format_config, format_rational, parse_config, parse_cylinder, parse_measure, parse_rule_arg,
    RuleSpec,
};
use crate::rule::LocalRule;

#[derive(Debug, Parser)]
#[command(
    name = "lca",
    version,
    about = "Linear cellular automata over Z_m, computed exactly"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factorization, permutativity, invertibility and series of a rule.
    Analyze {
        /// `m=4;l=1;coeffs=2,2,1` or a JSON file `{"m":4,"l":1,"coeffs":[2,2,1]}`
        rule: String,
    },
    /// Print the inverse rule.
    Invert { rule: String },
    /// Print the rule of the n-th iterate.
    Iterate { rule: String, n: u64 },
    /// Run a rule on a cyclic configuration.
    Simulate {
        rule: String,
        /// Comma-separated residues, e.g. `1,0,0,0`
        config: String,
        #[arg(long, default_value_t = 1)]
        steps: u64,
        /// Apply the inverse rule afterwards and check the start is recovered.
        #[arg(long)]
        inverse_roundtrip: bool,
    },
    /// Table of mu(A ∩ T^{-n} B) against mu(A) mu(B) for n = 0..=n_max.
    Mixing {
        rule: String,
        /// Cylinder `a=0;word=0,0,0,0`
        a: String,
        /// Cylinder `a=0;word=0`
        b: String,
        n_max: u64,
        /// `uniform` or comma-separated probabilities `1/2,1/4,1/8,1/8`
        #[arg(long, default_value = "uniform")]
        measure: String,
        /// Write the table here instead of stdout and print a summary.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Use the inverse rule's automaton.
        #[arg(long)]
        rule_inverse: bool,
    },
    /// ε-independence of the past and future joins of ξ(-i, i).
    Independence {
        rule: String,
        #[arg(long = "i", default_value_t = 0)]
        radius: u64,
        #[arg(long = "n", default_value_t = 0)]
        span: u64,
        #[arg(long = "N", default_value_t = 1)]
        gap: u64,
        #[arg(long, default_value = "uniform")]
        measure: String,
        /// Compare ξ(-i, i) with itself instead.
        #[arg(long)]
        self_test: bool,
    },
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Guard { .. } => 3,
        _ => 2,
    }
}

/// Parses `args` (including the program name), runs, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return e.exit_code();
        }
    };
    let lab = match Lab::from_env() {
        Ok(lab) => lab,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    match execute(&cli.command, &lab, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn execute(command: &Command, lab: &Lab, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Analyze { rule } => analyze(&parse_rule_arg(rule)?, out),
        Command::Invert { rule } => {
            let inverse = parse_rule_arg(rule)?.inverse()?;
            writeln!(out, "{}", RuleSpec::from(&inverse))?;
            Ok(())
        }
        Command::Iterate { rule, n } => {
            let rule = parse_rule_arg(rule)?;
            let iterate = rule.iterate(*n)?;
            let (lo, hi) = rule.formal_iterate_window(*n);
            writeln!(out, "{}", RuleSpec::from(&iterate))?;
            writeln!(out, "formal_window=[{lo},{hi}]")?;
            Ok(())
        }
        Command::Simulate {
            rule,
            config,
            steps,
            inverse_roundtrip,
        } => simulate(
            &parse_rule_arg(rule)?,
            config,
            *steps,
            *inverse_roundtrip,
            out,
        ),
        Command::Mixing {
            rule,
            a,
            b,
            n_max,
            measure,
            csv,
            rule_inverse,
        } => {
            let mut rule = parse_rule_arg(rule)?;
            if *rule_inverse {
                rule = rule.inverse()?;
            }
            let md = rule.modulus();
            let a = parse_cylinder(a, md)?;
            let b = parse_cylinder(b, md)?;
            let mu = parse_measure(measure, md)?;
            let table = lab.mixing_table(&rule, &a, &b, *n_max, &mu)?;
            match csv {
                Some(path) => {
                    table.write_csv(std::fs::File::create(path)?)?;
                    mixing_summary(&table, out)
                }
                None => table.write_csv(out),
            }
        }
        Command::Independence {
            rule,
            radius,
            span,
            gap,
            measure,
            self_test,
        } => {
            let rule = parse_rule_arg(rule)?;
            let mu = parse_measure(measure, rule.modulus())?;
            independence(lab, &rule, *radius, *span, *gap, &mu, *self_test, out)
        }
    }
}

fn analyze(rule: &LocalRule, out: &mut dyn Write) -> Result<()> {
    let verdict = rule.invertibility();
    writeln!(out, "rule: {}", RuleSpec::from(rule))?;
    writeln!(out, "modulus: {}", rule.modulus())?;
    writeln!(out, "window: [{}, {}]", rule.l(), rule.r())?;
    writeln!(out, "fps: {}", rule.to_fps())?;
    writeln!(out, "permutativity: {}", rule.permutativity().label())?;
    writeln!(out, "invertible: {}", verdict.is_invertible())?;
    for units in &verdict.per_prime {
        match units.unit_index() {
            Some(j) => writeln!(out, "unit_index[{}]: {j}", units.prime)?,
            None => {
                let list: Vec<String> = units.unit_indices.iter().map(i64::to_string).collect();
                writeln!(
                    out,
                    "unit_index[{}]: none (units at [{}])",
                    units.prime,
                    list.join(",")
                )?
            }
        }
    }
    if verdict.is_invertible() {
        writeln!(out, "inverse: {}", RuleSpec::from(&rule.inverse()?))?;
    }
    Ok(())
}

fn simulate(
    rule: &LocalRule,
    config: &str,
    steps: u64,
    roundtrip: bool,
    out: &mut dyn Write,
) -> Result<()> {
    let start = parse_config(config, rule.modulus())?;
    let mut x = start.clone();
    writeln!(out, "0: {}", format_config(&x))?;
    for t in 1..=steps {
        x = apply_cyclic(rule, &x)?;
        writeln!(out, "{t}: {}", format_config(&x))?;
    }
    if roundtrip {
        let inverse = rule.inverse()?;
        for t in (0..steps).rev() {
            x = apply_cyclic(&inverse, &x)?;
            writeln!(out, "{t}: {}", format_config(&x))?;
        }
        let status = if x == start { "ok" } else { "mismatch" };
        writeln!(out, "roundtrip: {status}")?;
    }
    Ok(())
}

fn mixing_summary(table: &MixingTable, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "rule: {}", RuleSpec::from(&table.rule))?;
    writeln!(out, "rows: {}", table.rows.len())?;
    match table.first_stable() {
        Some(n) => writeln!(out, "first_stable_n: {n}")?,
        None => writeln!(out, "first_stable_n: none")?,
    }
    writeln!(out, "window_bound_holds: {}", table.window_bound_holds())?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn independence(
    lab: &Lab,
    rule: &LocalRule,
    radius: u64,
    span: u64,
    gap: u64,
    mu: &BernoulliVector,
    self_test: bool,
    out: &mut dyn Write,
) -> Result<()> {
    if self_test {
        let xi = lab.coordinate_partition(radius, rule.modulus())?;
        let eps = lab.epsilon_independence(&xi, &xi, mu)?;
        writeln!(out, "epsilon: {}", format_rational(&eps))?;
        return Ok(());
    }
    let report = lab.weak_bernoulli_check(rule, radius, span, gap, mu)?;
    let fmt = |(a, b): (i64, i64)| format!("[{a}, {b}]");
    writeln!(out, "epsilon: {}", format_rational(&report.epsilon))?;
    writeln!(out, "past_window: {}", fmt(report.past_window))?;
    writeln!(out, "future_window: {}", fmt(report.future_window))?;
    writeln!(out, "past_bound: {}", fmt(report.past_bound))?;
    writeln!(out, "future_bound: {}", fmt(report.future_bound))?;
    if let Some((p, f)) = report.prime_square_bounds {
        writeln!(out, "prime_square_bounds: {} {}", fmt(p), fmt(f))?;
    }
    Ok(())
}
