// Exact arithmetic in Q(zeta_12) and root finding of a univariate polynomial.

use std::fmt::Write;

use polartree::exactalg::{CycloField, FieldExt, UniPoly};

pub fn run_example() -> polartree::Result<String> {
    let k = CycloField::new(12);
    let mut out = String::new();
    let i = k.root_of_unity(4)?;
    let w = k.root_of_unity(3)?;
    writeln!(out, "i = {i}, i^2 = {}", i.pow(2)).unwrap();
    writeln!(out, "w = {w}, 1 + w + w^2 = {}", &(&k.one() + &w) + &w.pow(2)).unwrap();
    let half = &k.frac(1, 2) * &(&i + &w);
    writeln!(out, "(i + w)/2 = {half}, inverse {}", half.inv()?).unwrap();

    // z^4 + 4 splits over Q(i) as (z - 1 - i)(z - 1 + i)(z + 1 - i)(z + 1 + i).
    let p = UniPoly::new(&k, vec![k.int(4), k.zero(), k.zero(), k.zero(), k.one()], 'z');
    let (roots, missing) = p.roots_in_field()?;
    writeln!(out, "roots of {p}:").unwrap();
    for (r, m) in roots {
        writeln!(out, "  {r} (multiplicity {m})").unwrap();
    }
    writeln!(out, "{missing} root(s) outside the field").unwrap();
    Ok(out)
}

#[allow(dead_code)]
fn main() -> polartree::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
