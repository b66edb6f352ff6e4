use num_rational::Rational64;
use polartree::cli::parse::parse_expression;
use polartree::exactalg::{BiPoly, CycloField, Field, FieldExt};
use polartree::npsolve::{expand_roots, expand_roots_counting, newton_polygon};
use polartree::puiseux::{conjugate_series, contact_order, exponent, order_along_arc, Exponent, Height, PuiseuxSeries};
use proptest::prelude::*;

fn q(n: i64) -> Exponent {
    Rational64::from_integer(n)
}

/// Exact series sum c_i y^(e_i / 2) over Q(zeta_4).
fn half_series(k: &Field, terms: &[(i64, i64)]) -> PuiseuxSeries {
    let mut t: Vec<(Exponent, _)> = terms
        .iter()
        .filter(|t| t.1 != 0)
        .map(|&(e, c)| (exponent(e, 2), k.int(c)))
        .collect();
    t.sort_by_key(|x| x.0);
    t.dedup_by_key(|x| x.0);
    PuiseuxSeries::exact(k, t)
}

fn series_terms() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((1i64..=8, -2i64..=2), 0..5)
}

#[test]
fn newton_polygon_of_a_cusp() {
    let k = CycloField::new(4);
    let f = parse_expression("x^3 - y^4 + x y^5", &k, false).unwrap();
    let np = newton_polygon(&f);
    let edges = np.edges();
    assert_eq!(edges.len(), 1);
    assert_eq!(edges[0].slope(), exponent(4, 3));
}

#[test]
fn cusp_roots_need_cube_roots_of_unity() {
    let k = CycloField::new(4);
    let f = parse_expression("x^3 - y^4", &k, false).unwrap();
    let exp = expand_roots_counting(&f, q(4)).unwrap();
    assert!(exp.roots.len() < 3);
    assert_eq!(exp.ramification, 3);
    let k12 = CycloField::new(12);
    let (roots, _) = expand_roots(&f.embed(&k12).unwrap(), q(4)).unwrap();
    assert_eq!(roots.len(), 3);
    for r in &roots {
        assert_eq!(r.series.terms()[0].0, exponent(4, 3));
        assert_eq!(r.series.terms()[0].1.pow(3), k12.one());
    }
}

#[test]
fn two_pair_root() {
    // (x^2 - y^3)^2 - 4 x y^5 - y^7 has the root y^(3/2) + y^(7/4).
    let k = CycloField::new(4);
    let f = parse_expression("(x^2 - y^3)^2 - 4x y^5 - y^7", &k, false).unwrap();
    let (roots, _) = expand_roots(&f, q(3)).unwrap();
    assert_eq!(roots.len(), 4);
    let first = PuiseuxSeries::exact(&k, vec![(exponent(3, 2), k.one()), (exponent(7, 4), k.one())]);
    let target: Vec<_> = first.terms().to_vec();
    assert!(roots
        .iter()
        .any(|r| r.series.terms().iter().take(2).cloned().collect::<Vec<_>>() == target));
}

#[test]
fn order_along_a_root_is_at_least_the_truncation() {
    let k = CycloField::new(4);
    let f = parse_expression("(x+y)*(x - y^2 + y^3)*(x + y^2 + y^3)", &k, false).unwrap();
    let (roots, _) = expand_roots(&f, q(6)).unwrap();
    assert_eq!(roots.len(), 3);
    for r in roots {
        let exact = PuiseuxSeries::exact(&k, r.series.terms().to_vec());
        assert_eq!(order_along_arc(&f, &exact).unwrap(), Height::Infinite);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn contact_is_ultrametric(a in series_terms(), b in series_terms(), c in series_terms()) {
        let k = CycloField::new(4);
        let (a, b, c) = (half_series(&k, &a), half_series(&k, &b), half_series(&k, &c));
        let ab = contact_order(&a, &b).unwrap();
        let bc = contact_order(&b, &c).unwrap();
        let ac = contact_order(&a, &c).unwrap();
        prop_assert!(ac >= ab.min(bc));
        prop_assert_eq!(ab, contact_order(&b, &a).unwrap());
    }

    #[test]
    fn conjugation_composes(a in series_terms(), k1 in 0i64..4, k2 in 0i64..4) {
        let k = CycloField::new(4);
        let a = half_series(&k, &a);
        let once = conjugate_series(&conjugate_series(&a, k1, 2).unwrap(), k2, 2).unwrap();
        prop_assert_eq!(once, conjugate_series(&a, k1 + k2, 2).unwrap());
        prop_assert_eq!(conjugate_series(&a, 2, 2).unwrap(), a.clone());
    }

    #[test]
    fn order_is_additive(f in prop::collection::vec((0u32..3, 0i64..4, -2i64..=2), 1..5),
                         g in prop::collection::vec((0u32..3, 0i64..4, -2i64..=2), 1..5),
                         arc in series_terms()) {
        let k = CycloField::new(4);
        let poly = |terms: &[(u32, i64, i64)]| {
            terms.iter().fold(BiPoly::zero(&k), |acc, &(i, j, c)| acc.add(&BiPoly::monomial(k.int(c), i, j)))
        };
        let (f, g) = (poly(&f), poly(&g));
        prop_assume!(!f.is_zero() && !g.is_zero());
        let xi = half_series(&k, &arc);
        let of = order_along_arc(&f, &xi).unwrap();
        let og = order_along_arc(&g, &xi).unwrap();
        let ofg = order_along_arc(&f.mul(&g), &xi).unwrap();
        match (of, og) {
            (Height::Finite(a), Height::Finite(b)) => prop_assert_eq!(ofg, Height::Finite(a + b)),
            _ => prop_assert_eq!(ofg, Height::Infinite),
        }
    }

    #[test]
    fn expansion_recovers_polynomial_roots(roots in prop::collection::btree_set(prop::collection::vec(-2i64..=2, 3), 1..4)) {
        let k = CycloField::new(4);
        let series: Vec<PuiseuxSeries> = roots
            .iter()
            .map(|cs| PuiseuxSeries::exact(&k, cs.iter().enumerate().filter(|(_, c)| **c != 0).map(|(e, c)| (q(e as i64 + 1), k.int(*c))).collect()))
            .collect();
        let x = BiPoly::x(&k);
        let f = series.iter().fold(BiPoly::constant(k.one()), |acc, s| {
            let lin = s.terms().iter().fold(x.clone(), |p, (e, c)| p.sub(&BiPoly::monomial(c.clone(), 0, e.to_integer())));
            acc.mul(&lin)
        });
        let (found, _) = expand_roots(&f, q(5)).unwrap();
        let mut got: Vec<_> = found.iter().map(|r| r.series.terms().to_vec()).collect();
        let mut want: Vec<_> = series.iter().map(|s| s.terms().to_vec()).collect();
        got.sort();
        want.sort();
        prop_assert_eq!(got, want);
    }
}
