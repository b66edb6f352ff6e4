mod common;

use common::{bar, fixture_session, polys};
use polartree::cli::fixtures::FIXTURES;
use polartree::cli::parse::parse_expression;
use polartree::exactalg::FieldExt;
use polartree::jacoracle::{jacobian, leave_heights};
use polartree::puiseux::{exponent, fmt_exponent, Height};
use polartree::session::Session;
use polartree::treemodel::{Departure, Point};

fn climbing(s: &Session, name: &str) -> usize {
    let b = bar(s, name);
    s.polar.records.iter().filter(|r| r.climbs(b)).map(|r| r.count).sum()
}

fn orders_below(s: &Session, name: &str) -> Vec<String> {
    let b = bar(s, name);
    let mut out = Vec::new();
    for r in &s.polar.records {
        if let Departure::Bounded { bar, contact } = &r.placement.departure {
            if *bar == b {
                for _ in 0..r.count {
                    out.push(contact.to_string());
                }
            }
        }
    }
    out.sort();
    out
}

#[test]
fn jacobian_of_example_9_1() {
    let (f, g) = polys("x^2 - (x^2 y - 2/3 x y^3 + y^5/5)^2", "x - 2(x^2 y - 2/3 x y^3 + y^5/5)");
    let k = f.field().clone();
    let printed = parse_expression("-2(2x - (x^2 y - 2/3 x y^3 + y^5/5))(x - y^2)^2", &k, false).unwrap();
    let j = jacobian(&f, &g);
    assert!(j.is_associate(&printed));
    assert_eq!(j, printed.neg());
}

#[test]
fn every_fixture_verifies() {
    for fx in FIXTURES {
        let s = fixture_session(fx.name);
        let rep = s.verify().unwrap();
        let failures: Vec<String> = rep.failures().map(|c| format!("{} {}", c.family, c.subject)).collect();
        assert!(rep.pass, "{}: {failures:?}", fx.name);
        assert_eq!(s.polar.total(), s.polar.k, "{}", fx.name);
    }
}

#[test]
fn example_1_1_with_e_2() {
    let s = fixture_session("ex1.1-e2");
    assert_eq!(climbing(&s, "B0"), 4);
    assert_eq!(climbing(&s, "B1"), 2);
    let s = fixture_session("ex1.1-e2-b");
    assert_eq!(climbing(&s, "B1"), 1);
    assert_eq!(orders_below(&s, "B1").len(), 3);
}

#[test]
fn example_1_1_with_e_1() {
    let s = fixture_session("ex1.1");
    let zero = Point::Exact(s.tree.field.zero());
    let b0 = bar(&s, "B0");
    let at_zero: usize = s
        .polar
        .records
        .iter()
        .filter(|r| r.point_on(b0) == Some(&zero))
        .map(|r| r.count)
        .sum();
    assert_eq!(at_zero, 4);
    assert_eq!(climbing(&s, "B1"), 4);
}

#[test]
fn example_6_1_orders() {
    let s = fixture_session("ex6.1");
    assert_eq!(orders_below(&s, "B1"), ["5", "5", "7"]);
    let t = fixture_session("ex6.1-e9");
    assert_eq!(orders_below(&t, "B1"), ["11/2", "11/2", "6"]);
    assert_ne!(leave_heights(&s.tree, &s.polar.records), leave_heights(&t.tree, &t.polar.records));
}

#[test]
fn example_9_1_generic_polar_roots() {
    let s = fixture_session("ex9.1");
    assert_eq!(s.polar.total(), 3);
    let two: usize = s
        .polar
        .records
        .iter()
        .filter(|r| matches!(r.placement.departure, Departure::Bounded { contact: Height::Finite(c), .. } if c == exponent(2, 1)))
        .map(|r| r.count)
        .sum();
    assert_eq!(two, 2);
    let s = fixture_session("ex9.1-b");
    assert_eq!(s.polar.total(), 5);
    let one: usize = s
        .polar
        .records
        .iter()
        .filter(|r| matches!(r.placement.departure, Departure::Bounded { contact: Height::Finite(c), .. } if c == exponent(1, 1)))
        .map(|r| r.count)
        .sum();
    assert_eq!(one, 4);
}

#[test]
fn cusp_polar_roots() {
    let s = fixture_session("ex8.2");
    assert_eq!(s.polar.total(), 2);
    assert!(s.verify().unwrap().family("one_function").all(|c| c.pass));
    let b0 = bar(&s, "B0");
    for r in &s.polar.records {
        assert!(r.series.terms().is_empty());
        assert_eq!(
            r.placement.departure,
            Departure::Leaves {
                bar: b0,
                point: Point::Exact(s.tree.field.zero())
            }
        );
    }
    assert_eq!(fmt_exponent(&s.tree.bar(b0).h()), "4/3");
}

#[test]
fn meromorphic_pair_keeps_coinciding_roots() {
    let s = fixture_session("mero");
    assert_eq!(s.polar.coinciding, 4);
    assert!(s.verify().unwrap().pass);
}

#[test]
fn fixed_truncation_is_respected() {
    let (f, g) = polys("x^3 - y^4", "y");
    let opts = polartree::session::Options {
        field: 3,
        trunc: Some(exponent(1, 2)),
    };
    assert!(matches!(
        polartree::session::open(&f, &g, &opts),
        Err(polartree::Error::TruncationTooShort(_))
    ));
}
