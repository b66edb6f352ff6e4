// Decide whether two pairs have equivalent tree models.

use std::fmt::Write;

use polartree::cli::parse::parse_expression;
use polartree::exactalg::CycloField;
use polartree::factorrep::compare_pairs;
use polartree::session::{open, Options, Session};

fn session(f: &str, g: &str) -> polartree::Result<Session> {
    let k = CycloField::new(4);
    open(
        &parse_expression(f, &k, false)?,
        &parse_expression(g, &k, false)?,
        &Options::default(),
    )
}

pub fn run_example() -> polartree::Result<String> {
    let cusp = session("x^3 - y^4", "y")?;
    let perturbed = session("x^3 - y^4 - 3x y^5", "y")?;
    let other = session("x^2 - y^3", "y")?;
    let mut out = String::new();
    for (label, s) in [("perturbed cusp", &perturbed), ("x^2 - y^3", &other)] {
        let v = compare_pairs((&cusp.tree, &cusp.analyses), (&s.tree, &s.analyses))?;
        write!(out, "x^3 - y^4 vs {label}: {}", v.level.as_str()).unwrap();
        if let Some(w) = v.witness {
            write!(out, " ({w})").unwrap();
        }
        out.push('\n');
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> polartree::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
