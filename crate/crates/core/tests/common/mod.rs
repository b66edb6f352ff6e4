#![allow(dead_code)]

use polartree::cli::fixtures::fixture;
use polartree::cli::parse::parse_expression;
use polartree::exactalg::{BiPoly, CycloField};
use polartree::factorrep::meromorphic_reduce;
use polartree::session::{open, Options, Session};
use polartree::treemodel::BarId;

pub fn polys(f: &str, g: &str) -> (BiPoly, BiPoly) {
    let k = CycloField::new(4);
    (parse_expression(f, &k, false).unwrap(), parse_expression(g, &k, false).unwrap())
}

pub fn pair(f: &str, g: &str) -> Session {
    let (f, g) = polys(f, g);
    open(&f, &g, &Options::default()).unwrap()
}

pub fn fixture_session(name: &str) -> Session {
    let fx = fixture(name).unwrap_or_else(|| panic!("no fixture {name}"));
    if fx.laurent {
        let k = CycloField::new(4);
        let f = parse_expression(fx.f, &k, true).unwrap();
        let g = parse_expression(fx.g, &k, true).unwrap();
        let r = meromorphic_reduce(&f, &g, None).unwrap();
        return open(&r.f, &r.g, &Options::default()).unwrap();
    }
    pair(fx.f, fx.g)
}

pub fn bar(s: &Session, name: &str) -> BarId {
    s.tree.by_name(name).unwrap_or_else(|| panic!("no bar {name}"))
}
