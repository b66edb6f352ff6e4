// Per-bar data: orders along generic arcs, the rational function M_B and
// the counts predicted at growth points.

use std::fmt::Write;

use polartree::baranalysis::{predict_c, predict_t};
use polartree::cli::parse::parse_expression;
use polartree::exactalg::{CycloField, FieldExt};
use polartree::session::{open, Options};

pub fn run_example() -> polartree::Result<String> {
    let k = CycloField::new(4);
    let f = parse_expression("(x^2 - y^16)*((x-y)^2 - y^18)", &k, false)?;
    let g = parse_expression("(x + y^9)*(x + y)", &k, false)?;
    let s = open(&f, &g, &Options::default())?;
    let mut out = String::new();
    for a in &s.analyses {
        let bar = s.tree.bar(a.bar);
        write!(out, "{} h={} nu=({}, {})", bar.name, bar.height, a.nu_f, a.nu_g).unwrap();
        if a.collinear {
            writeln!(out, " collinear").unwrap();
            continue;
        }
        writeln!(out, " M = ({})/({}) m={} n={}", a.mero_numerator, a.mero_denominator, a.m, a.n).unwrap();
        if let Ok((pred, total)) = predict_t(&s.analyses, a.bar) {
            let parts: Vec<String> = pred.iter().map(|(p, n)| format!("{n} at {p}")).collect();
            writeln!(out, "  Theorem T: {} (total {total})", parts.join(", ")).unwrap();
        }
        for z in &a.collinear_points {
            if let Ok(c) = predict_c(&s.tree, &s.analyses, a.bar, z) {
                writeln!(out, "  Theorem C: {c} bounded at collinear point {z}").unwrap();
            }
        }
    }
    let b0 = s.tree.by_name("B0").expect("first finite bar");
    let a0 = polartree::treemodel::analysis_of(&s.analyses, b0).expect("analysed bar");
    writeln!(out, "0 is a collinear point of B0: {}", a0.is_collinear_point(&k.zero())).unwrap();
    Ok(out)
}

#[allow(dead_code)]
fn main() -> polartree::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
