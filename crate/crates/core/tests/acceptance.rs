mod common;

use std::time::{Duration, Instant};

use common::{bar, fixture_session, pair};
use polartree::baranalysis::{predict_c, predict_t, BarAnalysis};
use polartree::cli::fixtures::FIXTURES;
use polartree::cli::parse::parse_expression;
use polartree::exactalg::{CycloField, Field, FieldExt, UniPoly};
use polartree::factorrep::{compare_pairs, generic_coordinates, group_factors, meromorphic_reduce, Level};
use polartree::jacoracle::{jacobian, leave_heights};
use polartree::puiseux::{exponent, fmt_exponent, Height};
use polartree::session::Session;
use polartree::treemodel::{analysis_of, cover_of, Departure, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One named sub-check of a criterion.
struct Check {
    what: String,
    pass: bool,
    detail: String,
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, want: T, got: T) {
        let pass = want == got;
        self.0.push(Check {
            what: what.into(),
            pass,
            detail: format!("want {want:?}, got {got:?}"),
        });
    }

    fn truth(&mut self, what: &str, pass: bool, detail: impl Into<String>) {
        self.0.push(Check {
            what: what.into(),
            pass,
            detail: detail.into(),
        });
    }
}

fn analysis<'a>(s: &'a Session, name: &str) -> &'a BarAnalysis {
    analysis_of(&s.analyses, bar(s, name)).expect("analysed bar")
}

/// 𝓜 equals c / d as rational functions in z.
fn mero_is(a: &BarAnalysis, c: i64, d: &UniPoly) -> bool {
    let k = a.mero_numerator.field().clone();
    let lhs = a.mero_numerator.mul(d);
    let rhs = a.mero_denominator.scale(&k.int(c)).with_var(lhs.var());
    lhs == rhs
}

fn z_poly(k: &Field, coeffs: &[i64]) -> UniPoly {
    UniPoly::new(k, coeffs.iter().map(|&c| k.int(c)).collect(), 'z')
}

fn climbing(s: &Session, name: &str) -> usize {
    let b = bar(s, name);
    s.polar.records.iter().filter(|r| r.climbs(b)).map(|r| r.count).sum()
}

fn bounded_orders(s: &Session, name: &str) -> Vec<String> {
    let b = bar(s, name);
    let mut out = Vec::new();
    for r in &s.polar.records {
        if let Departure::Bounded { bar, contact } = &r.placement.departure {
            if *bar == b {
                out.extend(std::iter::repeat_n(contact.to_string(), r.count));
            }
        }
    }
    out.sort();
    out
}

fn climbing_at_zero(s: &Session, name: &str) -> usize {
    let b = bar(s, name);
    let zero = Point::Exact(s.tree.field.zero());
    s.polar
        .records
        .iter()
        .filter(|r| r.point_on(b) == Some(&zero))
        .map(|r| r.count)
        .sum()
}

fn leaving_at(s: &Session, height: Height) -> usize {
    s.polar
        .records
        .iter()
        .filter(|r| matches!(&r.placement.departure, Departure::Bounded { contact, .. } if *contact == height))
        .map(|r| r.count)
        .sum()
}

fn criterion_1(c: &mut Checks) {
    let s = fixture_session("sec2");
    let a = analysis(&s, "B0");
    let k = s.tree.field.clone();
    c.truth(
        "M_B = 2/(z(z^2-1))",
        mero_is(a, 2, &z_poly(&k, &[0, -1, 0, 1])),
        format!("({})/({})", a.mero_numerator, a.mero_denominator),
    );
    c.eq("M(B) empty", 0, a.mero_zeros.len());
    c.eq("polar roots", 0, s.polar.total());
}

fn example_1_1(c: &mut Checks, tag: &str, plus: &str, minus: &str) {
    let s = fixture_session(plus);
    let (pred, _) = predict_t(&s.analyses, bar(&s, "B0")).unwrap();
    let zero = Point::Exact(s.tree.field.zero());
    let at_zero: i64 = pred.iter().filter(|(p, _)| *p == zero).map(|(_, n)| n).sum();
    c.eq(&format!("{tag} A=B=1: Theorem T at 0 on B0"), 4, at_zero);
    c.eq(&format!("{tag} A=B=1: climb over B0 at 0"), 4, climbing_at_zero(&s, "B0"));
    c.eq(&format!("{tag} A=B=1: climb over B1"), 2, climbing(&s, "B1"));
    let s = fixture_session(minus);
    c.eq(&format!("{tag} A=1,B=-1: climb over B1"), 1, climbing(&s, "B1"));
    c.eq(&format!("{tag} A=1,B=-1: bounded by B1"), 3, bounded_orders(&s, "B1").len());
}

fn criterion_2(c: &mut Checks) {
    example_1_1(c, "e=1,E=2", "ex1.1", "ex1.1-b");
}

fn criterion_2_supplement(c: &mut Checks) {
    example_1_1(c, "e=2,E=3", "ex1.1-e2", "ex1.1-e2-b");
}

fn criterion_3(c: &mut Checks) {
    let s = fixture_session("ex6.1");
    let k = s.tree.field.clone();
    let (a0, a1) = (analysis(&s, "B0"), analysis(&s, "B1"));
    c.truth(
        "M_B0 = 8/(z^2-1)",
        mero_is(a0, 8, &z_poly(&k, &[-1, 0, 1])),
        format!("({})/({})", a0.mero_numerator, a0.mero_denominator),
    );
    c.truth(
        "M_B1 = -18/(z(z^2-1))",
        mero_is(a1, -18, &z_poly(&k, &[0, -1, 0, 1])),
        format!("({})/({})", a1.mero_numerator, a1.mero_denominator),
    );
    let b0 = bar(&s, "B0");
    c.eq("Theorem C at 0 on B0", Some(3), predict_c(&s.tree, &s.analyses, b0, &k.zero()).ok());
    c.eq(
        "cover of 0 on B0",
        Some(vec![bar(&s, "B1")]),
        cover_of(&s.tree, &s.analyses, b0, &k.zero()).ok(),
    );
    c.eq(
        "orders bounded by B1",
        vec!["5".to_string(), "5".into(), "7".into()],
        bounded_orders(&s, "B1"),
    );
    let t = fixture_session("ex6.1-e9");
    let level = compare_pairs((&s.tree, &s.analyses), (&t.tree, &t.analyses)).map(|v| v.level);
    c.truth(
        "E=9 equivalent",
        matches!(level, Ok(l) if l >= Level::Equivalent),
        format!("{level:?}"),
    );
    let (lh, lt) = (leave_heights(&s.tree, &s.polar.records), leave_heights(&t.tree, &t.polar.records));
    c.truth("leave heights differ", lh != lt, format!("{lh:?} vs {lt:?}"));
}

fn criterion_4(c: &mut Checks) {
    let names = ["ex8.2", "ex8.2-b", "ex8.2-c"];
    let sessions: Vec<Session> = names.iter().map(|n| fixture_session(n)).collect();
    for i in 0..3 {
        for j in i + 1..3 {
            let (a, b) = (&sessions[i], &sessions[j]);
            let level = compare_pairs((&a.tree, &a.analyses), (&b.tree, &b.analyses)).map(|v| v.level);
            c.truth(
                &format!("{} ~ {}", names[i], names[j]),
                matches!(level, Ok(l) if l >= Level::Equivalent),
                format!("{level:?}"),
            );
        }
    }
    let mut values = Vec::new();
    for (n, s) in names.iter().zip(&sessions) {
        let rep = group_factors(&s.f, &s.g, &s.tree, &s.analyses, &s.polar).unwrap();
        for class in rep.classes.iter().filter(|cl| !cl.p_group.is_empty()) {
            let pt = class.p_truncation.as_ref().map(ToString::to_string);
            c.eq(&format!("{n}: P^T"), Some("x^2".to_string()), pt);
            c.truth(
                &format!("{n}: direct sum = formula"),
                class.theorem_i_holds(),
                format!("{:?} vs {:?}", class.i_f_direct, class.i_f),
            );
            values.push((fmt_exponent(&class.i_f), fmt_exponent(&class.i_g)));
        }
    }
    c.truth(
        "Theorem I identical",
        values.len() == 3 && values.windows(2).all(|w| w[0] == w[1]),
        format!("{values:?}"),
    );
}

fn criterion_5(c: &mut Checks) {
    let s = fixture_session("ex9.1");
    let k = s.tree.field.clone();
    let printed = parse_expression("-2(2x - (x^2 y - 2/3 x y^3 + y^5/5))(x - y^2)^2", &k, false).unwrap();
    c.truth(
        "J = -2(2x-G)(x-y^2)^2 up to a unit",
        jacobian(&s.f, &s.g).is_associate(&printed),
        jacobian(&s.f, &s.g).to_string(),
    );
    c.eq("m", Some(3), generic_coordinates(&s.f, &s.g, None).ok().map(|g| g.m));
    c.eq("leave at height 2", 2, leaving_at(&s, Height::Finite(exponent(2, 1))));
    let s = fixture_session("ex9.1-b");
    c.eq("second pair m", Some(5), generic_coordinates(&s.f, &s.g, None).ok().map(|g| g.m));
    c.eq("second pair leave at height 1", 4, leaving_at(&s, Height::Finite(exponent(1, 1))));
}

fn criterion_6(c: &mut Checks) {
    for name in ["ex8.2", "merle"] {
        let s = fixture_session(name);
        let rep = group_factors(&s.f, &s.g, &s.tree, &s.analyses, &s.polar).unwrap();
        let mut seen = 0;
        for class in rep.classes.iter().filter(|cl| cl.merle.is_some()) {
            seen += 1;
            let h = fmt_exponent(&class.height);
            c.eq(&format!("{name} h={h}: direct = Merle"), class.merle, class.i_f_direct);
        }
        let want = if name == "merle" { 2 } else { 1 };
        c.eq(&format!("{name}: characteristic bars"), want, seen);
    }
}

fn random_factor(rng: &mut ChaCha8Rng) -> String {
    let mut s = String::from("(x");
    for e in 1..=3 {
        let n: i64 = rng.gen_range(-2..=2);
        if n != 0 {
            let d: i64 = if rng.gen_bool(0.2) { 2 } else { 1 };
            s.push_str(&format!(" - ({n}/{d})*y^{e}"));
        }
    }
    s.push(')');
    s
}

fn random_pairs(count: usize) -> Vec<(String, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e37_79b9);
    let mut out = Vec::new();
    while out.len() < count {
        let nf = rng.gen_range(1..=3);
        let ng = rng.gen_range(1..=2);
        let mut factors: Vec<String> = (0..nf + ng).map(|_| random_factor(&mut rng)).collect();
        let mut uniq = factors.clone();
        uniq.sort();
        uniq.dedup();
        if uniq.len() < factors.len() {
            continue;
        }
        let g = factors.split_off(nf);
        out.push((factors.join("*"), g.join("*")));
    }
    out
}

fn criterion_7(c: &mut Checks) {
    let families = [
        "theorem_T",
        "theorem_N",
        "cor_2_2",
        "cor_2_3",
        "cor_2_4",
        "cor_2_5",
        "cor_2_8",
        "cor_2_9",
        "lemma_3_1",
    ];
    let mut checked = vec![0usize; families.len()];
    let mut run = |label: String, s: Session, c: &mut Checks| {
        let rep = s.verify().unwrap();
        let failed: Vec<String> = rep.failures().map(|ck| format!("{} {}", ck.family, ck.subject)).collect();
        c.truth(&format!("{label}: oracle"), rep.pass, format!("{failed:?}"));
        for (n, fam) in checked.iter_mut().zip(families) {
            *n += rep.family(fam).count();
        }
        let fr = group_factors(&s.f, &s.g, &s.tree, &s.analyses, &s.polar);
        c.truth(
            &format!("{label}: Theorem F partition"),
            fr.is_ok_and(|r| r.partition_complete(&s.polar)),
            "",
        );
    };
    for fx in FIXTURES {
        run(fx.name.to_string(), fixture_session(fx.name), c);
    }
    for (i, (f, g)) in random_pairs(50).into_iter().enumerate() {
        run(format!("random #{i} f={f} g={g}"), pair(&f, &g), c);
    }
    for (fam, n) in families.iter().zip(&checked) {
        c.truth(&format!("{fam} exercised"), *n > 0, format!("{n} checks"));
    }
}

fn criterion_8(c: &mut Checks) {
    let k = CycloField::new(4);
    let f = parse_expression("X^4 - Y^-2 X^2 + 1", &k, true).unwrap();
    let g = parse_expression("X^2 - Y^-1 X", &k, true).unwrap();
    let r = meromorphic_reduce(&f, &g, Some(2)).unwrap();
    c.truth("Jacobian identity", r.jacobian_identity, "");
    let s = polartree::session::open(&r.f, &r.g, &Default::default()).unwrap();
    let flat: Vec<_> = s
        .analyses
        .iter()
        .filter(|a| a.nu_f.numer() == &0 && a.nu_g.numer() == &0 && a.bar != 0)
        .collect();
    let heights: Vec<String> = flat.iter().map(|a| fmt_exponent(&s.tree.bar(a.bar).h())).collect();
    c.truth(
        "bar with nu_f = nu_g = 0 at h = 2",
        heights.iter().any(|h| h == "2"),
        format!("heights {heights:?}"),
    );
    let uncovered = flat.iter().any(|a| {
        a.collinear
            && a.collinear_points
                .iter()
                .any(|z| cover_of(&s.tree, &s.analyses, a.bar, z).map_or(true, |cv| cv.is_empty()))
    });
    c.truth("collinear with no cover", uncovered, "");
}

type Criterion = (&'static str, fn(&mut Checks), Duration);

fn main() {
    let criteria: [Criterion; 9] = [
        ("1", criterion_1, Duration::from_secs(1)),
        ("2", criterion_2, Duration::from_secs(10)),
        ("2 (supplement)", criterion_2_supplement, Duration::from_secs(10)),
        ("3", criterion_3, Duration::from_secs(10)),
        ("4", criterion_4, Duration::from_secs(5)),
        ("5", criterion_5, Duration::from_secs(5)),
        ("6", criterion_6, Duration::from_secs(10)),
        ("7", criterion_7, Duration::from_secs(120)),
        ("8", criterion_8, Duration::from_secs(2)),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let mut checks = Checks::default();
        let start = Instant::now();
        run(&mut checks);
        let took = start.elapsed();
        checks.truth("time limit", took <= limit, format!("{took:.2?} of {limit:?}"));
        let pass = checks.0.iter().all(|c| c.pass);
        let bad: Vec<&Check> = checks.0.iter().filter(|c| !c.pass).collect();
        println!(
            "{} criterion {name} ({} checks, {took:.2?})",
            if pass { "PASS" } else { "FAIL" },
            checks.0.len()
        );
        for c in bad {
            println!("    failed: {}: {}", c.what, c.detail);
        }
        if !pass && !name.contains("supplement") {
            failed += 1;
        }
    }
    println!("{failed} of 8 criteria failed");
    if failed > 0 {
        std::process::exit(1);
    }
}
