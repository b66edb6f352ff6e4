// Shear y -> y + c x until J is mini-regular in x.

use std::fmt::Write;

use polartree::cli::parse::parse_expression;
use polartree::exactalg::CycloField;
use polartree::factorrep::generic_coordinates;

pub fn run_example() -> polartree::Result<String> {
    let k = CycloField::new(4);
    let mut out = String::new();
    for (f, g) in [
        ("y^2 - x^3", "x + y^2"),
        ("x^2 - (x^2 y - 2/3 x y^3 + y^5/5)^2", "x - 2(x^2 y - 2/3 x y^3 + y^5/5)"),
    ] {
        let gen = generic_coordinates(&parse_expression(f, &k, false)?, &parse_expression(g, &k, false)?, None)?;
        writeln!(out, "f = {f}, g = {g}: c = {}, m = {}", gen.c, gen.m).unwrap();
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> polartree::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
