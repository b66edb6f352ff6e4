// Compute the polar roots of a pair, place them on the tree and check every
// prediction against the placement.

use std::fmt::Write;

use polartree::cli::fixtures::fixture;
use polartree::cli::parse::parse_expression;
use polartree::exactalg::CycloField;
use polartree::session::{open, Options};

pub fn run_example() -> polartree::Result<String> {
    let fx = fixture("ex9.1").expect("shipped fixture");
    let k = CycloField::new(4);
    let f = parse_expression(fx.f, &k, false)?;
    let g = parse_expression(fx.g, &k, false)?;
    let s = open(&f, &g, &Options::default())?;
    let mut out = String::new();
    writeln!(out, "J = {}", s.polar.jacobian).unwrap();
    for r in &s.polar.records {
        writeln!(out, "{} x{}: {}", r.describe(), r.count, r.placement.departure.describe(&s.tree)).unwrap();
    }
    let rep = s.verify()?;
    let failed = rep.failures().count();
    writeln!(out, "{} checks, {failed} failed", rep.checks.len()).unwrap();
    for n in &rep.notes {
        writeln!(out, "note: {n}").unwrap();
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> polartree::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
