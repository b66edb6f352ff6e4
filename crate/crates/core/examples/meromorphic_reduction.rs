// Reduce a pair Laurent in Y to a polynomial pair and analyse it.

use std::fmt::Write;

use polartree::cli::parse::parse_expression;
use polartree::exactalg::CycloField;
use polartree::factorrep::meromorphic_reduce;
use polartree::session::{open, Options};

pub fn run_example() -> polartree::Result<String> {
    let k = CycloField::new(4);
    let f = parse_expression("X^4 - Y^-2 X^2 + 1", &k, true)?;
    let g = parse_expression("X^2 - Y^-1 X", &k, true)?;
    let r = meromorphic_reduce(&f, &g, None)?;
    let mut out = String::new();
    writeln!(out, "s = {}: f~ = {}, g~ = {}", r.s, r.f_reduced, r.g_reduced).unwrap();
    writeln!(out, "Jacobian identity holds: {}", r.jacobian_identity).unwrap();
    let s = open(&r.f, &r.g, &Options::default())?;
    for a in &s.analyses {
        let b = s.tree.bar(a.bar);
        writeln!(
            out,
            "{} h={} nu=({}, {}) collinear={}",
            b.name, b.height, a.nu_f, a.nu_g, a.collinear
        )
        .unwrap();
    }
    writeln!(out, "{} polar root(s), {} shared with f*g", s.polar.total(), s.polar.coinciding).unwrap();
    Ok(out)
}

#[allow(dead_code)]
fn main() -> polartree::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
