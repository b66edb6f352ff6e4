mod common;

use common::{bar, fixture_session, pair};
use num_rational::Rational64;
use polartree::baranalysis::{predict_c, predict_t, total_via_basics, weeds};
use polartree::exactalg::{CycloRational, FieldExt};
use polartree::puiseux::{exponent, PuiseuxSeries};
use polartree::treemodel::{conjugacy_classes, cover_of, locate, repair_of, Departure, Point, GROUND};
use proptest::prelude::*;

fn heights(s: &polartree::session::Session) -> Vec<String> {
    s.tree.finite_bars().map(|b| format!("{}:{}", b.name, b.height)).collect()
}

#[test]
fn example_1_1_tree() {
    let s = fixture_session("ex1.1");
    assert_eq!(heights(&s), ["B*:0", "B0:1", "B1:2", "B2:3", "B3:3"]);
    let a = |n: &str| polartree::treemodel::analysis_of(&s.analyses, bar(&s, n)).unwrap();
    assert!(a("B*").collinear);
    assert!(a("B1").collinear);
    assert!(a("B2").purely_noncollinear && a("B3").purely_noncollinear);
    assert!(!a("B0").collinear && !a("B0").purely_noncollinear);
    let ascii = polartree::treemodel::render_tree(&s.tree, &s.analyses);
    assert!(ascii.contains('∘') && ascii.contains('×'));
}

#[test]
fn section_2_example() {
    let s = fixture_session("sec2");
    let b0 = bar(&s, "B0");
    let a = polartree::treemodel::analysis_of(&s.analyses, b0).unwrap();
    let k = &s.tree.field;
    for n in [2i64, 4, -5, 7] {
        let z = k.frac(n, 3);
        let want = &k.int(2) / &(&z * &(&(&z * &z) - &k.one()));
        assert_eq!(a.mero_value(&z), Some(want));
    }
    assert!(a.mero_zeros.is_empty());
    assert_eq!(a.m, 0);
    assert_eq!(s.polar.total(), 0);
}

#[test]
fn example_6_1_bars() {
    let s = fixture_session("ex6.1");
    assert_eq!(heights(&s), ["B*:0", "B0:1", "B1:8", "B2:9"]);
    let k = s.tree.field.clone();
    let (b0, b1) = (bar(&s, "B0"), bar(&s, "B1"));
    let a0 = polartree::treemodel::analysis_of(&s.analyses, b0).unwrap();
    let a1 = polartree::treemodel::analysis_of(&s.analyses, b1).unwrap();
    for n in [2i64, 3, 5] {
        let z = k.int(n);
        let zz = &(&z * &z) - &k.one();
        assert_eq!(a0.mero_value(&z), Some(&k.int(-8) / &zz));
        assert_eq!(a1.mero_value(&z), Some(&k.int(-18) / &(&z * &zz)));
    }
    assert_eq!(predict_c(&s.tree, &s.analyses, b0, &k.zero()).unwrap(), 3);
    assert_eq!(cover_of(&s.tree, &s.analyses, b0, &k.zero()).unwrap(), vec![b1]);
}

#[test]
fn example_6_1_trees_agree_for_both_e() {
    let a = fixture_session("ex6.1");
    let b = fixture_session("ex6.1-e9");
    assert_eq!(heights(&a), heights(&b));
}

#[test]
fn theorem_t_on_example_1_1() {
    let s = fixture_session("ex1.1");
    let (pred, total) = predict_t(&s.analyses, bar(&s, "B0")).unwrap();
    assert_eq!(total, 4);
    let at_zero: i64 = pred
        .iter()
        .filter(|(p, _)| *p == Point::Exact(s.tree.field.zero()))
        .map(|(_, n)| n)
        .sum();
    assert_eq!(at_zero, 4);
}

#[test]
fn figure_2_shape() {
    let s = fixture_session("fig2");
    let k = s.tree.field.clone();
    let b0 = bar(&s, "B0");
    let a0 = polartree::treemodel::analysis_of(&s.analyses, b0).unwrap();
    assert_eq!(a0.collinear_points, vec![k.zero(), k.one()]);
    assert_eq!(a0.noncollinear_points.len(), 2);
    let b2 = bar(&s, "B2");
    assert!(polartree::treemodel::analysis_of(&s.analyses, b2).unwrap().collinear);
    assert_eq!(
        cover_of(&s.tree, &s.analyses, b0, &k.zero()).unwrap(),
        vec![bar(&s, "B5"), bar(&s, "B6")]
    );
    let rep: Vec<_> = repair_of(&s.tree, &s.analyses, b0).into_iter().collect();
    assert!(rep.contains(&b2) && rep.contains(&bar(&s, "B3")));
    assert_eq!(weeds(&s.tree, &s.analyses, b0).unwrap(), s.polar.total() as i64 - 4);
    assert!(total_via_basics(&s.tree, &s.analyses, GROUND).is_err());
}

#[test]
fn conjugacy_of_an_irreducible_germ() {
    let s = fixture_session("merle");
    let classes = conjugacy_classes(&s.tree).unwrap();
    let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
    assert_eq!(sizes, vec![1, 1, 2]);
}

#[test]
fn locating_arcs() {
    let s = pair("x", "x^2 - y^2");
    let k = s.tree.field.clone();
    let root = PuiseuxSeries::exact(&k, vec![(Rational64::from_integer(1), k.one())]);
    assert!(matches!(locate(&s.tree, &root).unwrap().departure, Departure::Root(_)));
    let off = PuiseuxSeries::exact(&k, vec![(Rational64::from_integer(1), k.int(5))]);
    let placed = locate(&s.tree, &off).unwrap();
    assert_eq!(
        placed.departure,
        Departure::Leaves {
            bar: bar(&s, "B0"),
            point: Point::Exact(k.int(5))
        }
    );
    let high = PuiseuxSeries::exact(&k, vec![(exponent(5, 2), k.one())]);
    let placed = locate(&s.tree, &high).unwrap();
    assert!(placed.climbs_bar(bar(&s, "B0")));
    assert_eq!(placed.point_on(bar(&s, "B0")), Some(&Point::Exact(k.zero())));
}

fn linear_factor(c: &[i64]) -> String {
    let mut s = String::from("(x");
    for (i, c) in c.iter().enumerate() {
        if *c != 0 {
            s.push_str(&format!(" - ({c})*y^{}", i + 1));
        }
    }
    s.push(')');
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn trunks_partition_and_bimultiplicities_add(
        fs in prop::collection::btree_set(prop::collection::vec(-2i64..=2, 3), 1..4),
        gs in prop::collection::btree_set(prop::collection::vec(-2i64..=2, 3), 1..4),
    ) {
        prop_assume!(fs.is_disjoint(&gs));
        let f: Vec<String> = fs.iter().map(|c| linear_factor(c)).collect();
        let g: Vec<String> = gs.iter().map(|c| linear_factor(c)).collect();
        let s = pair(&f.join("*"), &g.join("*"));
        let tree = &s.tree;
        for b in tree.finite_bars() {
            let mut members: Vec<usize> = tree.trunks_on(b.id).flat_map(|t| t.members.clone()).collect();
            members.sort_unstable();
            let mut want = b.members.clone();
            want.sort_unstable();
            prop_assert_eq!(members, want);
            let (s_sum, t_sum) = tree.trunks_on(b.id).fold((0, 0), |acc, t| (acc.0 + t.s, acc.1 + t.t));
            match b.parent {
                Some(p) => prop_assert_eq!((s_sum, t_sum), tree.trunk(p).bimultiplicity()),
                None => prop_assert_eq!((s_sum, t_sum), (tree.p(), tree.q())),
            }
        }
        let points: Vec<CycloRational> = tree.growth_points(GROUND);
        prop_assert!(points.len() <= 1);
    }
}
