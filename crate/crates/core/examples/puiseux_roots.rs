// Newton-Puiseux roots of a germ with two characteristic pairs.

use std::fmt::Write;

use num_rational::Rational64;
use polartree::cli::parse::parse_expression;
use polartree::exactalg::CycloField;
use polartree::npsolve::{expand_roots, newton_polygon};

pub fn run_example() -> polartree::Result<String> {
    let k = CycloField::new(4);
    let f = parse_expression("(x^2 - y^3)^2 - 4x y^5 - y^7", &k, false)?;
    let mut out = String::new();
    writeln!(out, "f = {f}").unwrap();
    for e in newton_polygon(&f).edges() {
        writeln!(out, "Newton polygon edge of slope {}", e.slope()).unwrap();
    }
    let (roots, _) = expand_roots(&f, Rational64::from_integer(3))?;
    for r in &roots {
        writeln!(out, "x = {}  (multiplicity {})", r.series, r.multiplicity).unwrap();
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> polartree::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
