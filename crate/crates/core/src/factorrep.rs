//! Grouping of the polar roots into the factors of J, intersection
//! multiplicities, pair comparison, and the two coordinate reductions.

use num_rational::Rational64;
use num_traits::Zero;

use crate::baranalysis::BarAnalysis;
use crate::error::{Error, Result};
use crate::exactalg::{BiPoly, CycloRational, FieldExt};
use crate::jacoracle::{jacobian, PolarRootRecord, PolarRoots};
use crate::puiseux::{order_along_algebraic_arc, order_along_arc, Exponent, Height, PuiseuxSeries};
use crate::treemodel::{analysis_of, conjugacy_classes, conjugation_permutation, cover_of, BarId, Departure, Point, Side, Tree, GROUND};

#[derive(Clone, Debug)]
pub struct ClassFactors {
    pub bars: Vec<BarId>,
    pub height: Exponent,
    pub collinear: bool,
    pub nu_f: Exponent,
    pub nu_g: Exponent,
    /// Records leaving the tree on a bar of the class.
    pub p_group: Vec<usize>,
    pub p_order: usize,
    /// Product of the relative truncations of the P-group roots.
    pub p_truncation: Option<BiPoly>,
    pub m_star: usize,
    pub i_f: Exponent,
    pub i_g: Exponent,
    pub i_f_direct: Option<Exponent>,
    pub i_g_direct: Option<Exponent>,
    pub i_f_truncation: Option<Exponent>,
    pub i_g_truncation: Option<Exponent>,
    /// Records climbing a bar of the class at a collinear point and none of its cover.
    pub q_group: Vec<usize>,
    pub q_order: usize,
    /// Merle's value nu_f (p_s - 1) p_(s-1)...p_1 when f is irreducible and g = y.
    pub merle: Option<Exponent>,
}

impl ClassFactors {
    pub fn i_total(&self) -> Exponent {
        self.i_f + self.i_g
    }

    pub fn theorem_i_holds(&self) -> bool {
        self.i_f_direct == Some(self.i_f) && self.i_g_direct == Some(self.i_g)
    }

    pub fn addendum_holds(&self) -> bool {
        self.p_truncation.is_none() || (self.i_f_truncation == Some(self.i_f) && self.i_g_truncation == Some(self.i_g))
    }
}

#[derive(Clone, Debug)]
pub struct FactorReport {
    pub classes: Vec<ClassFactors>,
    pub q_ground: Vec<usize>,
    pub q_ground_order: usize,
    pub y_exponent: i64,
    pub total: usize,
    pub notes: Vec<String>,
}

impl FactorReport {
    /// Every polar root lies in exactly one group, except roots shared with f or g, which lie in none.
    pub fn partition_complete(&self, polar: &PolarRoots) -> bool {
        let mut seen = vec![0usize; polar.records.len()];
        for c in &self.classes {
            for &i in c.p_group.iter().chain(&c.q_group) {
                seen[i] += 1;
            }
        }
        for &i in &self.q_ground {
            seen[i] += 1;
        }
        seen.iter()
            .zip(&polar.records)
            .all(|(&s, r)| s == usize::from(!matches!(r.placement.departure, Departure::Root(_))))
    }

    pub fn grouped_order(&self) -> usize {
        self.classes.iter().map(|c| c.p_order + c.q_order).sum::<usize>() + self.q_ground_order
    }
}

fn count_of(records: &[PolarRootRecord], group: &[usize]) -> usize {
    group.iter().map(|&i| records[i].count).sum()
}

fn f_irreducible_with_g_y(tree: &Tree) -> bool {
    if tree.q() != 0 || tree.e2 != 1 || tree.e1 != 0 || tree.p() == 0 {
        return false;
    }
    let Ok(perm) = conjugation_permutation(tree) else {
        return false;
    };
    let first = tree.roots.iter().position(|r| r.side == Side::F).expect("a root of f");
    let mut orbit = vec![first];
    let mut k = perm[first];
    while k != first {
        orbit.push(k);
        k = perm[k];
    }
    orbit.len() == tree.p()
}

/// Group the polar roots into P-, Q- and ground groups and compute Theorem I.
pub fn group_factors(f: &BiPoly, g: &BiPoly, tree: &Tree, analyses: &[BarAnalysis], polar: &PolarRoots) -> Result<FactorReport> {
    let records = &polar.records;
    let merle_case = f_irreducible_with_g_y(tree);
    let mut notes = Vec::new();
    let mut classes = Vec::new();
    for bars in conjugacy_classes(tree)? {
        let a0 = analysis_of(analyses, bars[0]).expect("analysed bar");
        let collinear = a0.collinear;
        let height = tree.bar(bars[0]).h();
        let mut p_group = Vec::new();
        let mut q_group = Vec::new();
        if !collinear {
            for (i, r) in records.iter().enumerate() {
                if let Departure::Leaves { bar, .. } = &r.placement.departure {
                    if bars.contains(bar) {
                        p_group.push(i);
                    }
                }
            }
            for &b in &bars {
                let a = analysis_of(analyses, b).expect("analysed bar");
                for c in &a.collinear_points {
                    match cover_of(tree, analyses, b, c) {
                        Ok(cover) => {
                            for (i, r) in records.iter().enumerate() {
                                if r.point_on(b).and_then(Point::exact) == Some(c) && cover.iter().all(|&cb| !r.climbs(cb)) {
                                    q_group.push(i);
                                }
                            }
                        }
                        Err(Error::NoCover) => notes.push(format!("{}: collinear point {c} has no cover", tree.bar(b).name)),
                        Err(e) => return Err(e),
                    }
                }
            }
        }
        let m_star: usize = bars.iter().map(|&b| analysis_of(analyses, b).expect("analysed bar").m_star).sum();
        let (nu_f, nu_g) = (a0.nu_f, a0.nu_g);
        let ms = Rational64::from_integer(m_star as i64);
        let direct = |poly: &BiPoly| -> Option<Exponent> {
            let mut sum = Rational64::zero();
            for &i in &p_group {
                match records[i].order_of(poly) {
                    Ok(Height::Finite(o)) => sum += o * Rational64::from_integer(records[i].count as i64),
                    _ => return None,
                }
            }
            Some(sum)
        };
        let i_f_direct = direct(f);
        let i_g_direct = direct(g);
        let (p_truncation, i_f_truncation, i_g_truncation) = if collinear || p_group.is_empty() {
            (None, Some(Rational64::zero()), Some(Rational64::zero()))
        } else {
            let tr = truncation_product(tree, records, &p_group);
            let (tf, tg) = (
                truncation_orders(f, tree, records, &p_group),
                truncation_orders(g, tree, records, &p_group),
            );
            match tr {
                Ok(p) => (Some(p), tf.ok(), tg.ok()),
                Err(e) => {
                    notes.push(format!("class at height {height}: truncation product unavailable: {e}"));
                    (None, tf.ok(), tg.ok())
                }
            }
        };
        let merle = (merle_case && !collinear && height > Rational64::zero()).then(|| {
            let trunks = tree.trunks_on(bars[0]).count() as i64;
            nu_f * Rational64::from_integer((trunks - 1) * bars.len() as i64)
        });
        classes.push(ClassFactors {
            p_order: count_of(records, &p_group),
            q_order: count_of(records, &q_group),
            bars,
            height,
            collinear,
            nu_f,
            nu_g,
            p_group,
            p_truncation,
            m_star,
            i_f: if collinear { Rational64::zero() } else { nu_f * ms },
            i_g: if collinear { Rational64::zero() } else { nu_g * ms },
            i_f_direct,
            i_g_direct,
            i_f_truncation,
            i_g_truncation,
            q_group,
            merle,
        });
    }
    let mut q_ground = Vec::new();
    let ground = analysis_of(analyses, GROUND).expect("ground analysis");
    if ground.collinear && tree.main_trunk().is_some() {
        match cover_of(tree, analyses, GROUND, &tree.field.zero()) {
            Ok(cover) => {
                for (i, r) in records.iter().enumerate() {
                    if cover.iter().all(|&b| !r.climbs(b)) {
                        q_ground.push(i);
                    }
                }
            }
            Err(Error::NoCover) => notes.push("B*: 0 has no cover".into()),
            Err(e) => return Err(e),
        }
    }
    Ok(FactorReport {
        q_ground_order: count_of(records, &q_ground),
        classes,
        q_ground,
        y_exponent: polar.y_exponent,
        total: polar.total(),
        notes,
    })
}

/// A Puiseux polynomial as a polynomial in x and t with y = t^d.
fn series_in_t(xi: &PuiseuxSeries, d: i64) -> Result<BiPoly> {
    let mut out = BiPoly::zero(xi.field());
    for (e, c) in xi.terms() {
        let k = *e * Rational64::from_integer(d);
        if !k.is_integer() {
            return Err(Error::InternalInconsistency(format!("exponent {e} not in (1/{d})Z")));
        }
        out.add_term(0, k.to_integer(), c);
    }
    Ok(out)
}

fn from_t(p: &BiPoly, d: i64) -> Result<BiPoly> {
    let mut out = BiPoly::zero(p.field());
    for (&(i, j), c) in p.terms() {
        if j % d != 0 {
            return Err(Error::InternalInconsistency("truncation product is not a power series in y".into()));
        }
        out.add_term(i, j / d, c);
    }
    Ok(out)
}

/// prod over the group of (x - xi^T), with xi^T = lambda_B + a y^h(B).
fn truncation_product(tree: &Tree, records: &[PolarRootRecord], group: &[usize]) -> Result<BiPoly> {
    let d = tree.ramification.max(1);
    let field = &tree.field;
    let x = BiPoly::x(field);
    let mut prod = BiPoly::constant(field.one());
    for &i in group {
        let r = &records[i];
        let Departure::Leaves { bar, point } = &r.placement.departure else {
            return Err(Error::PlacementUnresolved("record does not leave the tree".into()));
        };
        let b = tree.bar(*bar);
        let lam = series_in_t(&b.lambda, d)?;
        let ht = b.h() * Rational64::from_integer(d);
        if !ht.is_integer() {
            return Err(Error::InternalInconsistency("bar height not in (1/D)Z".into()));
        }
        let factor = match point {
            Point::Exact(a) => {
                let xi = x.sub(&lam).sub(&BiPoly::monomial(a.clone(), 0, ht.to_integer()));
                xi.pow(r.count as u32)
            }
            Point::Algebraic(poly) => {
                let big_x = x.sub(&lam);
                let big_y = BiPoly::monomial(field.one(), 0, ht.to_integer());
                let deg = poly.degree();
                let mut homog = BiPoly::zero(field);
                for (k, c) in poly.coeffs().iter().enumerate() {
                    homog = homog.add(&big_x.pow(k as u32).mul(&big_y.pow((deg - k) as u32)).scale(c));
                }
                homog.pow((r.count / deg) as u32)
            }
        };
        prod = prod.mul(&factor);
    }
    from_t(&prod, d)
}

/// I(C_F, P^T) summed over the truncated roots.
fn truncation_orders(f: &BiPoly, tree: &Tree, records: &[PolarRootRecord], group: &[usize]) -> Result<Exponent> {
    let mut sum = Rational64::zero();
    for &i in group {
        let r = &records[i];
        let Departure::Leaves { bar, point } = &r.placement.departure else {
            return Err(Error::PlacementUnresolved("record does not leave the tree".into()));
        };
        let b = tree.bar(*bar);
        let o = match point {
            Point::Exact(a) => order_along_arc(f, &b.lambda.plus_term(b.h(), a.clone()))?,
            Point::Algebraic(poly) => order_along_algebraic_arc(f, &b.lambda, b.h(), poly, false)?,
        };
        match o {
            Height::Finite(o) => sum += o * Rational64::from_integer(r.count as i64),
            Height::Infinite => return Err(Error::Indeterminate("truncated root is a root of the curve".into())),
        }
    }
    Ok(sum)
}

/// Multiset of (leave height, count) over the P-group of a class.
pub fn leave_profile(tree: &Tree, records: &[PolarRootRecord], class: &ClassFactors) -> Vec<(Exponent, usize)> {
    let mut out: Vec<(Exponent, usize)> = Vec::new();
    for &i in &class.p_group {
        if let Departure::Leaves { bar, .. } = records[i].placement.departure {
            let h = tree.bar(bar).h();
            match out.iter_mut().find(|(e, _)| *e == h) {
                Some(e) => e.1 += records[i].count,
                None => out.push((h, records[i].count)),
            }
        }
    }
    out.sort();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Level {
    Inequivalent,
    Equivalent,
    MeroEquivalent,
}

impl Level {
    pub fn as_str(&self) -> &'static str {
        match self {
            Level::Inequivalent => "inequivalent",
            Level::Equivalent => "equivalent",
            Level::MeroEquivalent => "mero_equivalent",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceVerdict {
    pub level: Level,
    /// First failing condition and where it fails.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct BarSig {
    height: Height,
    mero: Option<usize>,
    pure: Vec<usize>,
    trunks: Vec<TrunkSig>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct TrunkSig {
    s: usize,
    t: usize,
    mb: Option<usize>,
    top: Option<Box<BarSig>>,
}

fn signature(tree: &Tree, analyses: &[BarAnalysis], bar: BarId, level: u8) -> Result<BarSig> {
    let b = tree.bar(bar);
    let a = analysis_of(analyses, bar);
    let nc = a.filter(|a| !a.collinear);
    let mero = if level >= 2 { nc.map(|a| a.m) } else { None };
    let pure = match (level >= 3, nc) {
        (true, Some(a)) => a.pure_multiplicities()?,
        _ => vec![],
    };
    let mut trunks = Vec::new();
    for t in tree.trunks_on(bar) {
        let mb = match (level >= 2, nc) {
            (true, Some(a)) if a.is_collinear_point(&t.point) => Some(a.mero_multiplicity(&t.point)),
            _ => None,
        };
        let top = if tree.bar(t.top).is_finite() {
            Some(Box::new(signature(tree, analyses, t.top, level)?))
        } else {
            None
        };
        trunks.push(TrunkSig { s: t.s, t: t.t, mb, top });
    }
    trunks.sort();
    Ok(BarSig {
        height: b.height,
        mero,
        pure,
        trunks,
    })
}

fn describe_difference(a: &BarSig, b: &BarSig, path: &str) -> String {
    if a.height != b.height {
        return format!("{path}: heights {} and {}", a.height, b.height);
    }
    if a.mero != b.mero {
        return format!("{path}: m(B) = {:?} and {:?}", a.mero.unwrap_or(0), b.mero.unwrap_or(0));
    }
    if a.pure != b.pure {
        return format!("{path}: pure mero-zero multiplicities {:?} and {:?}", a.pure, b.pure);
    }
    if a.trunks.len() != b.trunks.len() {
        return format!("{path}: {} and {} trunks", a.trunks.len(), b.trunks.len());
    }
    for (k, (ta, tb)) in a.trunks.iter().zip(&b.trunks).enumerate() {
        if ta == tb {
            continue;
        }
        if (ta.s, ta.t) != (tb.s, tb.t) {
            return format!("{path}, trunk {k}: bimultiplicities [{},{}] and [{},{}]", ta.s, ta.t, tb.s, tb.t);
        }
        if ta.mb != tb.mb {
            return format!("{path}, trunk {k}: m_B(c) = {} and {}", ta.mb.unwrap_or(0), tb.mb.unwrap_or(0));
        }
        if let (Some(x), Some(y)) = (&ta.top, &tb.top) {
            return describe_difference(x, y, &format!("{path}/{k}"));
        }
        return format!("{path}, trunk {k}: one side ends in a root");
    }
    format!("{path}: differ")
}

/// Strongest of Conditions 1-3 satisfied by the two pairs.
pub fn compare_pairs(a: (&Tree, &[BarAnalysis]), b: (&Tree, &[BarAnalysis])) -> Result<EquivalenceVerdict> {
    let names = ["", "Condition 1", "Condition 2", "Condition 3"];
    let mut level = Level::Inequivalent;
    for (k, next) in [(1u8, None), (2, Some(Level::Equivalent)), (3, Some(Level::MeroEquivalent))] {
        let sa = signature(a.0, a.1, GROUND, k)?;
        let sb = signature(b.0, b.1, GROUND, k)?;
        if sa != sb {
            return Ok(EquivalenceVerdict {
                level,
                witness: Some(format!("{} fails at {}", names[k as usize], describe_difference(&sa, &sb, "B*"))),
            });
        }
        if let Some(l) = next {
            level = l;
        }
    }
    Ok(EquivalenceVerdict { level, witness: None })
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub s: i64,
    /// y^(ps) F(x y^-s, y), a polynomial.
    pub f_reduced: BiPoly,
    pub g_reduced: BiPoly,
    /// F(x y^-s, y) = y^(-ps) f_reduced: the pair handed to the analysis.
    pub f: BiPoly,
    pub g: BiPoly,
    pub e1: i64,
    pub e2: i64,
    /// X Y J_(F,G)(X, Y) = x y J_(f,g)(x, y) under X = x y^-s, Y = y.
    pub jacobian_identity: bool,
}

impl Reduction {
    /// Root of F in X from a root x = lambda(y) of f: X = y^-s lambda(y).
    pub fn back_map(&self, lambda: &PuiseuxSeries) -> PuiseuxSeries {
        let shift = Rational64::from_integer(self.s);
        let terms = lambda.terms().iter().map(|(e, c)| (*e - shift, c.clone())).collect();
        let trunc = match lambda.trunc() {
            Height::Finite(t) => Height::Finite(t - shift),
            Height::Infinite => Height::Infinite,
        };
        PuiseuxSeries::new(lambda.field(), terms, trunc)
    }
}

fn substitute_shift(f: &BiPoly, s: i64) -> Result<BiPoly> {
    let field = f.field();
    let x_img = BiPoly::monomial(field.one(), 1, -s).into_laurent();
    f.compose(&x_img, &BiPoly::y(field))
}

fn reduced_ok(r: &BiPoly, degree: u32) -> bool {
    r.y_valuation() >= 0 && r.x_order_at_origin() == degree && r.x_degree() == degree
}

/// Substitute X = x y^-s, Y = y. `s = None` picks the least admissible s.
pub fn meromorphic_reduce(big_f: &BiPoly, big_g: &BiPoly, s: Option<i64>) -> Result<Reduction> {
    let p = big_f.x_degree();
    let q = big_g.x_degree();
    let monic = |h: &BiPoly, d: u32| {
        let lead: Vec<_> = h.terms().filter(|(&(i, _), _)| i == d).collect();
        lead.len() == 1 && lead[0].0 .1 == 0 && lead[0].1.is_one()
    };
    if !monic(big_f, p) || !monic(big_g, q) {
        return Err(Error::NotApplicable("F and G must be monic in X".into()));
    }
    let attempt = |s: i64| -> Result<Option<(BiPoly, BiPoly, BiPoly, BiPoly)>> {
        let f = substitute_shift(big_f, s)?;
        let g = substitute_shift(big_g, s)?;
        let fr = f.shift_y(p as i64 * s).normalize_laurent();
        let gr = g.shift_y(q as i64 * s).normalize_laurent();
        Ok((reduced_ok(&fr, p) && reduced_ok(&gr, q)).then_some((f, g, fr, gr)))
    };
    let (s, found) = match s {
        Some(s) => (s, attempt(s)?.ok_or(Error::SNotLargeEnough(s))?),
        None => {
            let mut hit = None;
            for s in 0..=64 {
                if let Some(v) = attempt(s)? {
                    hit = Some((s, v));
                    break;
                }
            }
            hit.ok_or(Error::SNotLargeEnough(64))?
        }
    };
    let (f, g, f_reduced, g_reduced) = found;
    let field = big_f.field();
    let lhs = BiPoly::x(field)
        .mul(&BiPoly::y(field))
        .mul(&jacobian(big_f, big_g))
        .compose(&BiPoly::monomial(field.one(), 1, -s).into_laurent(), &BiPoly::y(field))?;
    let rhs = BiPoly::x(field).mul(&BiPoly::y(field)).mul(&jacobian(&f, &g));
    Ok(Reduction {
        s,
        e1: f.y_valuation(),
        e2: g.y_valuation(),
        f_reduced,
        g_reduced,
        f,
        g,
        jacobian_identity: lhs.sub(&rhs).is_zero(),
    })
}

#[derive(Clone, Debug)]
pub struct Generic {
    pub f: BiPoly,
    pub g: BiPoly,
    pub c: CycloRational,
    /// x-order of the sheared Jacobian: the number of generic polar roots.
    pub m: usize,
}

fn mini_regular(h: &BiPoly) -> bool {
    h.y_valuation() == 0 && h.x_order_at_origin() as i64 == h.order()
}

/// Candidate shear constants 0, 1, -1, 2, -2, 1/2, -1/2, 3, -3, ...
pub fn shear_candidates(field: &crate::exactalg::Field, budget: usize) -> Vec<CycloRational> {
    let mut out = vec![field.zero()];
    let mut fracs: Vec<Rational64> = Vec::new();
    for den in 1..=8i64 {
        for num in 1..=8i64 {
            let r = Rational64::new(num, den);
            if *r.denom() == den && !fracs.contains(&r) {
                fracs.push(r);
            }
        }
    }
    fracs.sort_by_key(|r| (r.numer() + r.denom(), *r.denom()));
    for r in fracs {
        out.push(field.frac(*r.numer(), *r.denom()));
        out.push(field.frac(-r.numer(), *r.denom()));
    }
    out.truncate(budget);
    out
}

/// Shear y -> y + c x so that f, g and J are mini-regular in x.
pub fn generic_coordinates(f: &BiPoly, g: &BiPoly, c: Option<CycloRational>) -> Result<Generic> {
    let field = f.field();
    let shear = |c: &CycloRational| -> Result<(BiPoly, BiPoly)> {
        let x = BiPoly::x(field);
        let y_img = BiPoly::y(field).add(&x.scale(c));
        Ok((f.compose(&x, &y_img)?, g.compose(&x, &y_img)?))
    };
    let candidates = match c {
        Some(c) => vec![c],
        None => shear_candidates(field, 64),
    };
    for c in candidates {
        let (fs, gs) = shear(&c)?;
        let j = jacobian(&fs, &gs);
        if j.is_zero() {
            continue;
        }
        if mini_regular(&fs) && mini_regular(&gs) && mini_regular(&j) {
            return Ok(Generic {
                m: j.x_order_at_origin() as usize,
                f: fs,
                g: gs,
                c,
            });
        }
    }
    Err(Error::NoGenericFound)
}
