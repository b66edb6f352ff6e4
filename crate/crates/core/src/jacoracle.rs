//! The independent oracle: expand the Jacobian, place its roots on the tree,
//! and compare with every prediction.

use std::collections::BTreeSet;

use num_rational::Rational64;
use num_traits::Zero;

use crate::baranalysis::{check_n, predict_c, total_via_basics, weeds, BarAnalysis};
use crate::error::{Error, Result};
use crate::exactalg::{BiPoly, CycloRational, FieldExt, UniPoly};
use crate::npsolve::expand_roots_counting;
use crate::puiseux::{fmt_exponent, order_along_arc, Exponent, Height, PuiseuxSeries};
use crate::treemodel::{analysis_of, cover_of, locate, locate_algebraic, repair_of, BarId, Departure, Placement, Point, Tree, GROUND};

/// J = f_y g_x - f_x g_y.
pub fn jacobian(f: &BiPoly, g: &BiPoly) -> BiPoly {
    f.deriv_y().mul(&g.deriv_x()).sub(&f.deriv_x().mul(&g.deriv_y()))
}

#[derive(Clone, Debug)]
pub struct PolarRootRecord {
    /// The root, or for an algebraic group its exact prefix.
    pub series: PuiseuxSeries,
    /// Exponent and polynomial whose roots are the next coefficient of an algebraic group.
    pub algebraic: Option<(Exponent, UniPoly)>,
    /// Multiplicity of each root as a root of J.
    pub multiplicity: usize,
    /// Number of roots represented, counting multiplicity.
    pub count: usize,
    pub placement: Placement,
}

impl PolarRootRecord {
    pub fn climbs(&self, bar: BarId) -> bool {
        self.placement.climbs_bar(bar)
    }

    pub fn point_on(&self, bar: BarId) -> Option<&Point> {
        self.placement.point_on(bar)
    }

    /// y-order of F along the represented roots.
    pub fn order_of(&self, f: &BiPoly) -> Result<Height> {
        match &self.algebraic {
            None => order_along_arc(f, &self.series),
            Some((e, poly)) => crate::puiseux::order_along_algebraic_arc(f, &self.series, *e, poly, true),
        }
    }

    pub fn describe(&self) -> String {
        match &self.algebraic {
            None => self.series.to_string(),
            Some((e, poly)) => {
                let prefix = self.series.below(*e);
                let head = if prefix.terms().is_empty() {
                    String::new()
                } else {
                    format!("{} + ", PuiseuxSeries::exact(prefix.field(), prefix.terms().to_vec()))
                };
                format!("{head}c*y^({}) + ..., {} = 0", fmt_exponent(e), poly.clone().with_var('c'))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct PolarRoots {
    pub records: Vec<PolarRootRecord>,
    /// J = y^E J_*.
    pub y_exponent: i64,
    /// x-order of J_*.
    pub k: usize,
    /// Roots of J that coincide with roots of f*g (kept, placed on the leaf's chain).
    pub coinciding: usize,
    pub ramification: i64,
    pub jacobian: BiPoly,
}

impl PolarRoots {
    pub fn total(&self) -> usize {
        self.records.iter().map(|r| r.count).sum()
    }
}

/// Expand J to `target` and place every polar root on the tree.
pub fn polar_roots(f: &BiPoly, g: &BiPoly, tree: &Tree, target: Exponent) -> Result<PolarRoots> {
    let j = jacobian(f, g);
    if j.is_zero() {
        return Err(Error::NotApplicable("the Jacobian vanishes identically".into()));
    }
    let shift = j.y_valuation();
    let jp = j.shift_y(-shift).normalize_laurent();
    let exp = expand_roots_counting(&jp, target)?;
    let mut records = Vec::new();
    let mut coinciding = 0;
    for root in &exp.roots {
        let placement = locate(tree, &root.series)?;
        let count = root.multiplicity * root.distinct;
        if matches!(placement.departure, Departure::Root(_)) {
            coinciding += count;
        }
        records.push(PolarRootRecord {
            series: root.series.clone(),
            algebraic: None,
            multiplicity: root.multiplicity,
            count,
            placement,
        });
    }
    for branch in &exp.unresolved {
        let placement = locate_algebraic(tree, &branch.prefix, branch.exponent, &branch.poly)?;
        records.push(PolarRootRecord {
            series: branch.prefix.clone(),
            algebraic: Some((branch.exponent, branch.poly.clone())),
            multiplicity: branch.multiplicity,
            count: branch.count(),
            placement,
        });
    }
    Ok(PolarRoots {
        records,
        y_exponent: shift,
        k: exp.x_order,
        coinciding,
        ramification: exp.ramification,
        jacobian: j,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub family: String,
    pub subject: String,
    pub predicted: String,
    pub observed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Default)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub pass: bool,
}

impl VerificationReport {
    fn push(&mut self, family: &str, subject: String, predicted: impl ToString, observed: impl ToString) {
        let predicted = predicted.to_string();
        let observed = observed.to_string();
        let pass = predicted == observed;
        self.checks.push(Check {
            family: family.into(),
            subject,
            predicted,
            observed,
            pass,
        });
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn family(&self, name: &str) -> impl Iterator<Item = &Check> {
        let name = name.to_string();
        self.checks.iter().filter(move |c| c.family == name)
    }

    pub fn family_passes(&self, name: &str) -> bool {
        self.family(name).all(|c| c.pass)
    }

    fn finish(mut self) -> Self {
        self.pass = self.checks.iter().all(|c| c.pass);
        self
    }
}

fn count_at(records: &[PolarRootRecord], bar: BarId, point: &CycloRational) -> usize {
    records
        .iter()
        .filter(|r| r.point_on(bar).and_then(Point::exact) == Some(point))
        .map(|r| r.count)
        .sum()
}

fn count_climbing(records: &[PolarRootRecord], bar: BarId) -> usize {
    records.iter().filter(|r| r.climbs(bar)).map(|r| r.count).sum()
}

fn in_c_or_m(a: &BarAnalysis, point: &Point) -> bool {
    if a.collinear {
        return true;
    }
    match point {
        Point::Exact(z) => a.is_collinear_point(z) || a.mero_multiplicity(z) > 0,
        Point::Algebraic(r) => !a.unresolved.gcd(&r.clone().with_var('z')).is_constant(),
    }
}

/// Number of polar roots climbing `bar` at `c` and none of `cover`.
fn count_under_cover(records: &[PolarRootRecord], bar: BarId, c: &CycloRational, cover: &[BarId]) -> usize {
    records
        .iter()
        .filter(|r| r.point_on(bar).and_then(Point::exact) == Some(c))
        .filter(|r| cover.iter().all(|b| !r.climbs(*b)))
        .map(|r| r.count)
        .sum()
}

/// Observed weeds on `bar`.
pub fn observed_weeds(tree: &Tree, analyses: &[BarAnalysis], records: &[PolarRootRecord], bar: BarId) -> usize {
    let a = analysis_of(analyses, bar).expect("analysed bar");
    let rep = repair_of(tree, analyses, bar);
    records
        .iter()
        .filter(|r| match r.point_on(bar) {
            Some(p) => in_c_or_m(a, p),
            None => false,
        })
        .filter(|r| {
            rep.iter().all(|&b| match r.point_on(b) {
                None => true,
                Some(p) => in_c_or_m(analysis_of(analyses, b).expect("analysed bar"), p),
            })
        })
        .map(|r| r.count)
        .sum()
}

/// Sample arcs on B at a point not in N(B) u C(B) and with M_B(a) nonzero.
fn sample_points(tree: &Tree, a: &BarAnalysis, how_many: usize) -> Vec<CycloRational> {
    let growth = tree.growth_points(a.bar);
    let mut out = Vec::new();
    let mut k = 1i64;
    while out.len() < how_many && k < 64 {
        for cand in [tree.field.int(k), tree.field.int(-k)] {
            if growth.contains(&cand) {
                continue;
            }
            if !a.collinear && a.mero_value(&cand).is_none_or(|v| v.is_zero()) {
                continue;
            }
            if out.len() < how_many {
                out.push(cand);
            }
        }
        k += 1;
    }
    out
}

fn order_string(h: &Height) -> String {
    h.to_string()
}

/// O(J(xi)) = O(f(xi)) + O(g(xi)) - h(B) - 1 on the arc lambda_B + z y^h(B), M_B(z) != 0.
pub fn identity_check(f: &BiPoly, g: &BiPoly, tree: &Tree, bar: BarId, z: &CycloRational) -> Result<bool> {
    let b = tree.bar(bar);
    let h = b.h();
    let xi = b.lambda.plus_term(h, z.clone());
    let j = jacobian(f, g);
    let oj = order_along_arc(&j, &xi)?;
    let of = order_along_arc(f, &xi)?;
    let og = order_along_arc(g, &xi)?;
    match (oj, of, og) {
        (Height::Finite(oj), Height::Finite(of), Height::Finite(og)) => Ok(oj == of + og - h - Rational64::from_integer(1)),
        _ => Ok(false),
    }
}

/// Compare every prediction with the oracle placements.
pub fn verify(f: &BiPoly, g: &BiPoly, tree: &Tree, analyses: &[BarAnalysis], polar: &PolarRoots) -> Result<VerificationReport> {
    let mut rep = VerificationReport::default();
    let records = &polar.records;
    rep.push("count", "roots of J_* = K".into(), polar.k, polar.total());
    if polar.coinciding > 0 {
        rep.notes.push(format!(
            "{} root(s) of J coincide with roots of f*g and are counted on the chains of those roots",
            polar.coinciding
        ));
    }
    let zero_nu_above = |bar: BarId| {
        let mut span = tree.above(bar);
        span.push(bar);
        span.into_iter().filter(|&b| tree.bar(b).is_finite()).any(|b| {
            let a = analysis_of(analyses, b).expect("analysed bar");
            a.nu_f.is_zero() || a.nu_g.is_zero()
        })
    };
    for a in analyses {
        let bar = a.bar;
        let name = tree.bar(bar).name.clone();
        if a.collinear {
            continue;
        }
        // Theorem T and Corollary 2.2
        for (point, v) in &a.t_pred {
            match point {
                Point::Exact(z) => {
                    rep.push("theorem_T", format!("{name} at {z}"), v, count_at(records, bar, z));
                }
                Point::Algebraic(u) => {
                    let mut prod = UniPoly::constant(tree.field.one(), 'z');
                    let mut count = 0;
                    for r in records {
                        if let Some(Point::Algebraic(poly)) = r.point_on(bar) {
                            prod = prod.mul(&poly.clone().with_var('z').pow(r.multiplicity));
                            count += r.count;
                        }
                    }
                    rep.push("theorem_T", format!("{name} at roots of {u} (pooled count)"), v, count);
                    rep.push(
                        "theorem_T",
                        format!("{name} unresolved mero-zeros (exact polynomial identity)"),
                        u,
                        prod.monic(),
                    );
                }
            }
        }
        rep.push(
            "theorem_T",
            format!("{name} total"),
            a.t_total.unwrap_or(0),
            count_climbing(records, bar),
        );
        let outside: usize = records
            .iter()
            .filter(|r| match r.point_on(bar) {
                Some(Point::Exact(z)) => !a.points.iter().any(|d| &d.point == z) && a.mero_multiplicity(z) == 0,
                Some(p @ Point::Algebraic(_)) => !in_c_or_m(a, p),
                None => false,
            })
            .map(|r| r.count)
            .sum();
        rep.push("cor_2_2", format!("{name} climbs outside N u C u M"), 0, outside);
        // Corollary 2.3
        for (z, m) in &a.mero_zeros {
            if a.is_collinear_point(z) {
                continue;
            }
            let leaving: usize = records
                .iter()
                .filter(|r| {
                    r.placement.departure
                        == Departure::Leaves {
                            bar,
                            point: Point::Exact(z.clone()),
                        }
                })
                .map(|r| r.count)
                .sum();
            rep.push(
                "cor_2_3",
                format!("{name} pure mero-zero {z} climbers"),
                m,
                count_at(records, bar, z),
            );
            rep.push("cor_2_3", format!("{name} pure mero-zero {z} leavers"), m, leaving);
        }
        // Corollary 2.4
        if !a.delta_sum.is_zero() {
            let tau: usize = a.points.iter().map(|d| d.p + d.q).sum();
            rep.push("cor_2_4", format!("{name} m+1 = n"), a.n, a.m + 1);
            rep.push(
                "cor_2_4",
                format!("{name} total = sum(p+q) - 1"),
                tau - 1,
                count_climbing(records, bar),
            );
        }
        // Theorem N
        for z in &a.noncollinear_points {
            match check_n(tree, analyses, bar, z) {
                Ok((post, ok)) => {
                    let pa = analysis_of(analyses, post).expect("analysed postbar");
                    let pname = tree.bar(post).name.clone();
                    rep.push(
                        "theorem_N",
                        format!("{pname} over {name} at {z}: m+1 = n"),
                        format!("{}", pa.n),
                        format!("{}", if ok { pa.n } else { pa.m + 1 }),
                    );
                    let gap: usize = records
                        .iter()
                        .filter(|r| r.point_on(bar).and_then(Point::exact) == Some(z) && !r.climbs(post))
                        .map(|r| r.count)
                        .sum();
                    rep.push("theorem_N", format!("gap below {pname}"), 0, gap);
                }
                Err(Error::NoPostbar) => {}
                Err(e) => return Err(e),
            }
        }
        // Theorem C
        for c in &a.collinear_points {
            match cover_of(tree, analyses, bar, c) {
                Ok(cover) => {
                    let pred = predict_c(tree, analyses, bar, c)?;
                    let names: Vec<String> = cover.iter().map(|&b| tree.bar(b).name.clone()).collect();
                    rep.push(
                        "theorem_C",
                        format!("{name} at {c}, cover {{{}}}", names.join(",")),
                        pred,
                        count_under_cover(records, bar, c, &cover),
                    );
                }
                Err(Error::NoCover) => rep.notes.push(format!("{name}: collinear point {c} has no cover")),
                Err(e) => return Err(e),
            }
        }
        // Corollaries 2.8 and 2.9
        if zero_nu_above(bar) {
            rep.notes.push(format!(
                "{name}: it or a bar above has nu_f = 0 or nu_g = 0; weed counts not asserted"
            ));
        } else {
            let w = weeds(tree, analyses, bar)?;
            rep.push("cor_2_8", format!("{name} weeds"), w, observed_weeds(tree, analyses, records, bar));
            let total = total_via_basics(tree, analyses, bar)?;
            rep.push("cor_2_9", format!("{name} sum of weeds over basics"), a.t_total.unwrap_or(0), total);
        }
    }
    // Corollary 2.5
    for t in &tree.trunks {
        let top = tree.bar(t.top);
        if !top.is_finite() || (t.s > 0 && t.t > 0) {
            continue;
        }
        let a = analysis_of(analyses, t.top).expect("analysed bar");
        let applies = if t.t == 0 { !a.nu_g.is_zero() } else { !a.nu_f.is_zero() };
        if !applies {
            continue;
        }
        let name = &top.name;
        let expected = if t.t == 0 { t.s } else { t.t } as i64 - 1;
        rep.push("cor_2_5", format!("{name} purely non-collinear"), true, a.purely_noncollinear);
        rep.push("cor_2_5", format!("{name} m+1 = n"), a.n, a.m + 1);
        rep.push("cor_2_5", format!("{name} total"), expected, count_climbing(records, t.top));
    }
    // Remark 2.10
    let ground = analysis_of(analyses, GROUND).expect("ground analysis");
    if ground.collinear && tree.main_trunk().is_some() {
        let zero = tree.field.zero();
        match cover_of(tree, analyses, GROUND, &zero) {
            Ok(cover) => {
                let pred = crate::baranalysis::ground_residual(tree, analyses, polar.k)?;
                rep.push(
                    "remark_2_10",
                    "polar roots bounded by every minimal non-collinear bar".into(),
                    pred,
                    count_under_cover(records, GROUND, &zero, &cover),
                );
            }
            Err(Error::NoCover) => rep.notes.push("B*: 0 has no cover".into()),
            Err(e) => return Err(e),
        }
    }
    lemma_checks(f, g, tree, analyses, &mut rep)?;
    one_function_checks(g, tree, records, &mut rep);
    Ok(rep.finish())
}

fn lemma_checks(f: &BiPoly, g: &BiPoly, tree: &Tree, analyses: &[BarAnalysis], rep: &mut VerificationReport) -> Result<()> {
    let one = Rational64::from_integer(1);
    for a in analyses {
        let bar = a.bar;
        let b = tree.bar(bar);
        let h = b.h();
        let name = b.name.clone();
        // Lemma 3.1 on one sample arc per growth point
        for d in &a.points {
            let post = tree.postbar(bar, &d.point).expect("trunk at growth point");
            let pb = tree.bar(post);
            let e = match pb.height {
                Height::Finite(h2) => (h + h2) / Rational64::from_integer(2),
                Height::Infinite => h + one,
            };
            let base = pb.lambda.below(e);
            let next = pb.lambda.coeff(e).unwrap_or_else(|| tree.field.zero());
            let xi = PuiseuxSeries::exact(&tree.field, base.terms().to_vec()).plus_term(e, &next + &tree.field.one());
            let (Height::Finite(nf), Height::Finite(ng)) = (order_along_arc(f, &xi)?, order_along_arc(g, &xi)?) else {
                continue;
            };
            let det = nf * Rational64::from_integer(d.q as i64) - ng * Rational64::from_integer(d.p as i64);
            rep.push(
                "lemma_3_1",
                format!("{name} at {}: determinant on a sample arc", d.point),
                fmt_exponent(&d.delta),
                fmt_exponent(&det),
            );
            let expected = a.nu_f + Rational64::from_integer(d.p as i64) * (e - h);
            rep.push(
                "lemma_3_1",
                format!("{name} at {}: nu_f(xi) = nu_f(B) + p_k e", d.point),
                fmt_exponent(&expected),
                fmt_exponent(&nf),
            );
        }
        if bar == GROUND {
            continue;
        }
        // Lemma 3.2 and the identity J = y^(-h-1) f g (M_B + ...)
        for z in sample_points(tree, a, 2) {
            let xi = b.lambda.plus_term(h, z.clone());
            rep.push(
                "lemma_3_2",
                format!("{name} at {z}: nu_f"),
                fmt_exponent(&a.nu_f),
                order_string(&order_along_arc(f, &xi)?),
            );
            rep.push(
                "lemma_3_2",
                format!("{name} at {z}: nu_g"),
                fmt_exponent(&a.nu_g),
                order_string(&order_along_arc(g, &xi)?),
            );
            if !a.collinear {
                rep.push("identity", format!("{name} at {z}"), true, identity_check(f, g, tree, bar, &z)?);
            }
        }
    }
    Ok(())
}

/// With g = y: on each bar with l trunks exactly l - 1 polar roots leave.
fn one_function_checks(g: &BiPoly, tree: &Tree, records: &[PolarRootRecord], rep: &mut VerificationReport) {
    if g.sub(&BiPoly::y(&tree.field)).is_zero() {
        for b in tree.finite_bars().filter(|b| b.id != GROUND) {
            let l = tree.trunks_on(b.id).count();
            let leaving: usize = records
                .iter()
                .filter(|r| matches!(&r.placement.departure, Departure::Leaves { bar, .. } if *bar == b.id))
                .map(|r| r.count)
                .sum();
            rep.push("one_function", format!("{} leavers", b.name), l - 1, leaving);
        }
    }
}

/// Multiset of (leave or bound height, count) over all records.
pub fn leave_heights(tree: &Tree, records: &[PolarRootRecord]) -> Vec<(String, usize)> {
    let mut out: Vec<(Exponent, usize)> = Vec::new();
    for r in records {
        let h = match &r.placement.departure {
            Departure::Leaves { bar, .. } => tree.bar(*bar).h(),
            Departure::Bounded { contact, .. } => contact.finite().unwrap_or_else(Rational64::zero),
            Departure::Root(_) => continue,
        };
        match out.iter_mut().find(|(e, _)| *e == h) {
            Some(entry) => entry.1 += r.count,
            None => out.push((h, r.count)),
        }
    }
    out.sort();
    out.into_iter().map(|(e, c)| (fmt_exponent(&e), c)).collect()
}

/// Bars a record climbs, by name.
pub fn climb_names(tree: &Tree, r: &PolarRootRecord) -> BTreeSet<String> {
    r.placement.climbs.iter().map(|(b, _)| tree.bar(*b).name.clone()).collect()
}
