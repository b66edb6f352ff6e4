// The tree model of a pair: bars, trunks and their bimultiplicities.

use std::fmt::Write;

use polartree::cli::parse::parse_expression;
use polartree::exactalg::CycloField;
use polartree::session::{open, Options};
use polartree::treemodel::render_tree;

pub fn run_example() -> polartree::Result<String> {
    let k = CycloField::new(4);
    let f = parse_expression("(x+y)*(x - y^2 + y^3)*(x + y^2 + y^3)", &k, false)?;
    let g = parse_expression("(x-y)*(x - y^2 - y^3)*(x + y^2 - y^3)", &k, false)?;
    let s = open(&f, &g, &Options::default())?;
    let mut out = render_tree(&s.tree, &s.analyses);
    for b in s.tree.finite_bars() {
        let trunks: Vec<String> = s.tree.trunks_on(b.id).map(|t| format!("[{},{}]", t.s, t.t)).collect();
        writeln!(out, "{} at height {}: trunks {}", b.name, b.height, trunks.join(" ")).unwrap();
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> polartree::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
