// Group polar roots by conjugacy class of bars and compare the intersection
// multiplicities with Merle's formula.

use std::fmt::Write;

use polartree::cli::parse::parse_expression;
use polartree::exactalg::CycloField;
use polartree::factorrep::group_factors;
use polartree::puiseux::fmt_exponent;
use polartree::session::{open, Options};

pub fn run_example() -> polartree::Result<String> {
    let k = CycloField::new(4);
    let f = parse_expression("(x^2 - y^3)^2 - 4x y^5 - y^7", &k, false)?;
    let g = parse_expression("y", &k, false)?;
    let s = open(&f, &g, &Options::default())?;
    let rep = group_factors(&s.f, &s.g, &s.tree, &s.analyses, &s.polar)?;
    let mut out = String::new();
    for c in &rep.classes {
        let names: Vec<&str> = c.bars.iter().map(|&b| s.tree.bar(b).name.as_str()).collect();
        write!(
            out,
            "{{{}}} h={} P {} Q {} I(f) = {}",
            names.join(","),
            fmt_exponent(&c.height),
            c.p_order,
            c.q_order,
            fmt_exponent(&c.i_f)
        )
        .unwrap();
        if let Some(m) = c.merle {
            write!(out, ", Merle {}", fmt_exponent(&m)).unwrap();
        }
        if let Some(p) = &c.p_truncation {
            write!(out, ", P^T = {p}").unwrap();
        }
        out.push('\n');
    }
    writeln!(out, "partition complete: {}", rep.partition_complete(&s.polar)).unwrap();
    Ok(out)
}

#[allow(dead_code)]
fn main() -> polartree::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
