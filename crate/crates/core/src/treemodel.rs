//! The tree model of a pair: bars, trunks, heights, bimultiplicities and the
//! placement of arbitrary arcs on it.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;

use crate::baranalysis::BarAnalysis;
use crate::error::{Error, Result};
use crate::exactalg::{CycloRational, Field, FieldExt, UniPoly};
use crate::puiseux::{conjugate_series, contact_order, fmt_exponent, Exponent, Height, PuiseuxSeries};

pub type BarId = usize;
pub type TrunkId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    F,
    G,
}

#[derive(Clone, Debug)]
pub struct TreeRoot {
    pub side: Side,
    pub series: PuiseuxSeries,
    pub name: String,
}

#[derive(Clone, Debug)]
pub struct Trunk {
    pub id: TrunkId,
    pub s: usize,
    pub t: usize,
    /// The bar it grows on and the growth point there.
    pub bar: BarId,
    pub point: CycloRational,
    pub members: Vec<usize>,
    pub top: BarId,
}

impl Trunk {
    pub fn bimultiplicity(&self) -> (usize, usize) {
        (self.s, self.t)
    }

    pub fn total(&self) -> usize {
        self.s + self.t
    }
}

#[derive(Clone, Debug)]
pub struct Bar {
    pub id: BarId,
    pub name: String,
    pub height: Height,
    pub lambda: PuiseuxSeries,
    pub parent: Option<TrunkId>,
    /// Trunks growing on the bar, sorted by growth point.
    pub trunks: Vec<TrunkId>,
    pub members: Vec<usize>,
}

impl Bar {
    pub fn is_finite(&self) -> bool {
        self.height.is_finite()
    }

    /// Finite height; panics on a bar of infinite height.
    pub fn h(&self) -> Exponent {
        self.height.finite().expect("bar of infinite height")
    }
}

#[derive(Clone, Debug)]
pub struct Tree {
    pub field: Field,
    pub roots: Vec<TreeRoot>,
    pub bars: Vec<Bar>,
    pub trunks: Vec<Trunk>,
    pub e1: i64,
    pub e2: i64,
    /// lcm of all exponent denominators met in the roots.
    pub ramification: i64,
    leaf_of: Vec<BarId>,
}

pub const GROUND: BarId = 0;

impl Tree {
    pub fn p(&self) -> usize {
        self.roots.iter().filter(|r| r.side == Side::F).count()
    }

    pub fn q(&self) -> usize {
        self.roots.iter().filter(|r| r.side == Side::G).count()
    }

    pub fn bar(&self, id: BarId) -> &Bar {
        &self.bars[id]
    }

    pub fn trunk(&self, id: TrunkId) -> &Trunk {
        &self.trunks[id]
    }

    pub fn finite_bars(&self) -> impl Iterator<Item = &Bar> {
        self.bars.iter().filter(|b| b.is_finite())
    }

    pub fn main_trunk(&self) -> Option<&Trunk> {
        self.bars[GROUND].trunks.first().map(|&t| &self.trunks[t])
    }

    pub fn trunks_on(&self, bar: BarId) -> impl Iterator<Item = &Trunk> {
        self.bars[bar].trunks.iter().map(|&t| &self.trunks[t])
    }

    pub fn growth_points(&self, bar: BarId) -> Vec<CycloRational> {
        self.trunks_on(bar).map(|t| t.point.clone()).collect()
    }

    pub fn trunk_at(&self, bar: BarId, point: &CycloRational) -> Option<&Trunk> {
        self.trunks_on(bar).find(|t| &t.point == point)
    }

    /// The postbar of `bar` supported at `point`.
    pub fn postbar(&self, bar: BarId, point: &CycloRational) -> Option<BarId> {
        self.trunk_at(bar, point).map(|t| t.top)
    }

    /// The bar below and the point it is supported at.
    pub fn support(&self, bar: BarId) -> Option<(BarId, &CycloRational)> {
        self.bars[bar].parent.map(|t| (self.trunks[t].bar, &self.trunks[t].point))
    }

    /// The infinite bar of root `k`.
    pub fn leaf(&self, k: usize) -> BarId {
        self.leaf_of[k]
    }

    /// Bars from B* up to the leaf of root `k`.
    pub fn chain(&self, k: usize) -> Vec<BarId> {
        let mut out = vec![self.leaf_of[k]];
        while let Some((b, _)) = self.support(*out.last().unwrap()) {
            out.push(b);
        }
        out.reverse();
        out
    }

    /// All bars lying above `bar` (not including it), finite or not.
    pub fn above(&self, bar: BarId) -> Vec<BarId> {
        let mut out = Vec::new();
        let mut stack: Vec<BarId> = self.trunks_on(bar).map(|t| t.top).collect();
        while let Some(b) = stack.pop() {
            out.push(b);
            stack.extend(self.trunks_on(b).map(|t| t.top));
        }
        out.sort_unstable();
        out
    }

    pub fn by_name(&self, name: &str) -> Option<BarId> {
        self.bars.iter().position(|b| b.name == name)
    }

    pub fn max_finite_height(&self) -> Exponent {
        self.finite_bars().map(|b| b.h()).max().unwrap_or_else(Rational64::zero)
    }
}

fn contact(a: &PuiseuxSeries, b: &PuiseuxSeries) -> Result<Height> {
    contact_order(a, b).map_err(|_| Error::TruncationTooShort(format!("contact of {a} and {b} is not visible at this truncation")))
}

/// Build T(f,g) from the roots of f (`alpha`) and g (`beta`) and the y-contents.
pub fn build_tree(alpha: &[PuiseuxSeries], beta: &[PuiseuxSeries], e1: i64, e2: i64) -> Result<Tree> {
    let field = alpha
        .iter()
        .chain(beta)
        .next()
        .map(|s| s.field().clone())
        .unwrap_or_else(|| crate::exactalg::CycloField::new(4));
    build_tree_in(&field, alpha, beta, e1, e2)
}

pub fn build_tree_in(field: &Field, alpha: &[PuiseuxSeries], beta: &[PuiseuxSeries], e1: i64, e2: i64) -> Result<Tree> {
    let mut roots = Vec::new();
    for (k, s) in alpha.iter().enumerate() {
        roots.push(TreeRoot {
            side: Side::F,
            series: s.clone(),
            name: format!("a{}", k + 1),
        });
    }
    for (k, s) in beta.iter().enumerate() {
        roots.push(TreeRoot {
            side: Side::G,
            series: s.clone(),
            name: format!("b{}", k + 1),
        });
    }
    for r in &roots {
        match r.series.order() {
            Ok(Height::Finite(e)) if e > Rational64::zero() => {}
            Ok(Height::Infinite) => {}
            Ok(_) => {
                return Err(Error::NotApplicable(format!(
                    "root {} = {} does not have positive order",
                    r.name, r.series
                )))
            }
            Err(_) => {}
        }
    }
    let mut ramification = 1i64;
    for r in &roots {
        for (e, _) in r.series.terms() {
            ramification = ramification.lcm(e.denom());
        }
    }
    let mut tree = Tree {
        field: field.clone(),
        roots,
        bars: vec![Bar {
            id: GROUND,
            name: "B*".into(),
            height: Height::Finite(Rational64::zero()),
            lambda: PuiseuxSeries::zero(field),
            parent: None,
            trunks: vec![],
            members: vec![],
        }],
        trunks: vec![],
        e1,
        e2,
        ramification,
        leaf_of: vec![],
    };
    let n = tree.roots.len();
    tree.leaf_of = vec![usize::MAX; n];
    tree.bars[GROUND].members = (0..n).collect();
    if n == 0 {
        return Ok(tree);
    }
    let mut queue: VecDeque<TrunkId> = VecDeque::new();
    let main = tree.new_trunk(GROUND, field.zero(), (0..n).collect());
    tree.bars[GROUND].trunks.push(main);
    queue.push_back(main);
    let mut finite_count = 0usize;
    while let Some(tid) = queue.pop_front() {
        let members = tree.trunks[tid].members.clone();
        let bar_id = tree.bars.len();
        if members.len() == 1 {
            let k = members[0];
            tree.bars.push(Bar {
                id: bar_id,
                name: format!("B({})", tree.roots[k].name),
                height: Height::Infinite,
                lambda: tree.roots[k].series.clone(),
                parent: Some(tid),
                trunks: vec![],
                members,
            });
            tree.leaf_of[k] = bar_id;
            tree.trunks[tid].top = bar_id;
            continue;
        }
        let mut h = Height::Infinite;
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                let c = contact(&tree.roots[a].series, &tree.roots[b].series)?;
                if c == Height::Infinite {
                    return Err(Error::InputViolatesSimplicity(format!(
                        "roots {} and {} coincide",
                        tree.roots[a].name, tree.roots[b].name
                    )));
                }
                h = h.min(c);
            }
        }
        let h = h.finite().expect("finite minimal contact");
        let lambda = tree.roots[members[0]].series.below(h);
        let mut groups: BTreeMap<CycloRational, Vec<usize>> = BTreeMap::new();
        for &k in &members {
            let c = tree.roots[k]
                .series
                .coeff(h)
                .ok_or_else(|| Error::TruncationTooShort(format!("coefficient of y^{} is not known", fmt_exponent(&h))))?;
            groups.entry(c).or_default().push(k);
        }
        tree.bars.push(Bar {
            id: bar_id,
            name: format!("B{finite_count}"),
            height: Height::Finite(h),
            lambda,
            parent: Some(tid),
            trunks: vec![],
            members,
        });
        finite_count += 1;
        tree.trunks[tid].top = bar_id;
        for (point, group) in groups {
            let t = tree.new_trunk(bar_id, point, group);
            tree.bars[bar_id].trunks.push(t);
            queue.push_back(t);
        }
    }
    Ok(tree)
}

impl Tree {
    fn new_trunk(&mut self, bar: BarId, point: CycloRational, members: Vec<usize>) -> TrunkId {
        let s = members.iter().filter(|&&k| self.roots[k].side == Side::F).count();
        let id = self.trunks.len();
        self.trunks.push(Trunk {
            id,
            s,
            t: members.len() - s,
            bar,
            point,
            members,
            top: usize::MAX,
        });
        id
    }
}

/// A point of a bar: a field element, or the roots of a polynomial without roots in the field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Point {
    Exact(CycloRational),
    Algebraic(UniPoly),
}

impl Point {
    pub fn exact(&self) -> Option<&CycloRational> {
        match self {
            Point::Exact(c) => Some(c),
            Point::Algebraic(_) => None,
        }
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Point::Exact(c) => write!(f, "{c}"),
            Point::Algebraic(p) => write!(f, "root of {p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Departure {
    /// Leaves the tree on `bar` at a point where no trunk grows.
    Leaves { bar: BarId, point: Point },
    /// Climbs the bar below but not `bar`; `contact` is O(arc, lambda_bar) < h(bar).
    Bounded { bar: BarId, contact: Height },
    /// The arc is the root `k` itself.
    Root(usize),
}

impl Departure {
    pub fn describe(&self, tree: &Tree) -> String {
        match self {
            Departure::Leaves { bar, point } => format!("leaves {} at {point}", tree.bar(*bar).name),
            Departure::Bounded { bar, contact } => format!("bounded by {} (contact {contact})", tree.bar(*bar).name),
            Departure::Root(k) => format!("is {}", tree.roots[*k].name),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Placement {
    pub climbs: Vec<(BarId, Point)>,
    pub departure: Departure,
}

impl Placement {
    pub fn climbs_bar(&self, bar: BarId) -> bool {
        self.climbs.iter().any(|(b, _)| *b == bar)
    }

    pub fn point_on(&self, bar: BarId) -> Option<&Point> {
        self.climbs.iter().find(|(b, _)| *b == bar).map(|(_, p)| p)
    }

    /// The bar the arc last climbs over.
    pub fn top(&self) -> BarId {
        self.climbs.last().map(|(b, _)| *b).unwrap_or(GROUND)
    }
}

/// Known data of an arc: exact terms below `known`, plus possibly an
/// algebraic coefficient at `known`.
struct ArcView<'a> {
    terms: &'a PuiseuxSeries,
    known: Height,
    algebraic: Option<&'a UniPoly>,
}

impl ArcView<'_> {
    fn below(&self, h: Exponent) -> Result<PuiseuxSeries> {
        if Height::Finite(h) > self.known {
            return Err(Error::TruncationTooShort(format!("arc known below y^{} only", self.known)));
        }
        Ok(self.terms.below(h))
    }

    fn coeff(&self, h: Exponent) -> Result<Point> {
        match Height::Finite(h).cmp(&self.known) {
            std::cmp::Ordering::Less => Ok(Point::Exact(self.terms.coeff(h).unwrap_or_else(|| self.terms.field().zero()))),
            std::cmp::Ordering::Equal if self.algebraic.is_some() => Ok(Point::Algebraic(self.algebraic.unwrap().clone())),
            _ => Err(Error::TruncationTooShort(format!(
                "coefficient of y^{} is beyond the known part of the arc",
                fmt_exponent(&h)
            ))),
        }
    }

    fn known_or(&self, h: Exponent) -> Exponent {
        self.known.finite().unwrap_or(h + Rational64::from_integer(1))
    }

    /// O(arc, lambda) where lambda is exact; `None` if not determined.
    fn contact_with(&self, lambda: &PuiseuxSeries) -> Result<Height> {
        match self.known {
            Height::Infinite => contact(self.terms, lambda),
            Height::Finite(k) => {
                let diff = self.terms.below(k).sub(&lambda.below(k));
                match diff.order()? {
                    Height::Finite(e) => Ok(Height::Finite(e)),
                    Height::Infinite if self.algebraic.is_some() => Ok(Height::Finite(k)),
                    Height::Infinite => Err(Error::TruncationTooShort(format!("arc agrees with {lambda} to its truncation"))),
                }
            }
        }
    }
}

fn walk(tree: &Tree, arc: &ArcView) -> Result<Placement> {
    let mut climbs = Vec::new();
    let mut bar = GROUND;
    loop {
        let b = &tree.bars[bar];
        let h = match b.height {
            Height::Finite(h) => h,
            Height::Infinite => {
                let k = b.members[0];
                return match arc.contact_with(&b.lambda)? {
                    Height::Infinite => Ok(Placement {
                        climbs,
                        departure: Departure::Root(k),
                    }),
                    c => Ok(Placement {
                        climbs,
                        departure: Departure::Bounded { bar, contact: c },
                    }),
                };
            }
        };
        let point = arc.coeff(h)?;
        climbs.push((bar, point.clone()));
        let next = match &point {
            Point::Exact(c) => tree.postbar(bar, c),
            Point::Algebraic(_) => None,
        };
        let Some(next) = next else {
            return Ok(Placement {
                climbs,
                departure: Departure::Leaves { bar, point },
            });
        };
        let nb = &tree.bars[next];
        if let Height::Finite(h2) = nb.height {
            let visible = Height::Finite(h2) <= arc.known;
            let diff = if visible {
                arc.below(h2)?.sub(&nb.lambda)
            } else {
                arc.terms.below(arc.known_or(h2)).sub(&nb.lambda.below(arc.known_or(h2)))
            };
            if !diff.terms().is_empty() {
                let c = diff.order()?;
                return Ok(Placement {
                    climbs,
                    departure: Departure::Bounded { bar: next, contact: c },
                });
            }
            if !visible {
                if arc.algebraic.is_some() {
                    return Ok(Placement {
                        climbs,
                        departure: Departure::Bounded {
                            bar: next,
                            contact: arc.known,
                        },
                    });
                }
                return Err(Error::TruncationTooShort(format!(
                    "arc is not known up to the height {} of {}",
                    fmt_exponent(&h2),
                    nb.name
                )));
            }
        }
        bar = next;
    }
}

/// Place an arc on the tree.
pub fn locate(tree: &Tree, xi: &PuiseuxSeries) -> Result<Placement> {
    walk(
        tree,
        &ArcView {
            terms: xi,
            known: xi.trunc(),
            algebraic: None,
        },
    )
}

/// Place the arcs `prefix + c*y^exponent + ...`, c a root of `poly` (which has no root in the field).
pub fn locate_algebraic(tree: &Tree, prefix: &PuiseuxSeries, exponent: Exponent, poly: &UniPoly) -> Result<Placement> {
    let terms = prefix.below(exponent);
    walk(
        tree,
        &ArcView {
            terms: &terms,
            known: Height::Finite(exponent),
            algebraic: Some(poly),
        },
    )
}

/// xi^T = lambda_B + a*y^h(B) where xi leaves the tree on B at a; xi itself for a root.
pub fn truncate_relative(xi: &PuiseuxSeries, tree: &Tree) -> Result<PuiseuxSeries> {
    let placement = locate(tree, xi)?;
    match placement.departure {
        Departure::Root(_) => Ok(xi.clone()),
        Departure::Leaves {
            bar,
            point: Point::Exact(a),
        } => {
            let b = &tree.bars[bar];
            Ok(b.lambda.plus_term(b.h(), a))
        }
        Departure::Leaves { .. } => Err(Error::NotApplicable("algebraic leave point".into())),
        Departure::Bounded { bar, .. } => Err(Error::NotApplicable(format!(
            "arc does not leave the tree: it is bounded by {}",
            tree.bars[bar].name
        ))),
    }
}

/// The bars reached from `bar` at its collinear point `c` through collinear bars,
/// ending at non-collinear ones.
pub fn cover_of(tree: &Tree, analysis: &[BarAnalysis], bar: BarId, c: &CycloRational) -> Result<Vec<BarId>> {
    let start = tree.postbar(bar, c).ok_or(Error::NoPostbar)?;
    let mut out = Vec::new();
    let mut stack = vec![start];
    while let Some(b) = stack.pop() {
        let Some(a) = analysis_of(analysis, b) else {
            return Err(Error::NoCover);
        };
        if !a.collinear {
            out.push(b);
            continue;
        }
        stack.extend(tree.trunks_on(b).map(|t| t.top));
    }
    out.sort_unstable();
    Ok(out)
}

pub fn analysis_of(analysis: &[BarAnalysis], bar: BarId) -> Option<&BarAnalysis> {
    analysis.iter().find(|a| a.bar == bar)
}

/// rep(B): bars on partial repairs from B through collinear points to purely non-collinear bars.
pub fn repair_of(tree: &Tree, analysis: &[BarAnalysis], bar: BarId) -> BTreeSet<BarId> {
    fn reaches(tree: &Tree, analysis: &[BarAnalysis], b: BarId, memo: &mut BTreeMap<BarId, bool>, out: &mut BTreeSet<BarId>) -> bool {
        if let Some(&v) = memo.get(&b) {
            return v;
        }
        let Some(a) = analysis_of(analysis, b) else {
            memo.insert(b, false);
            return false;
        };
        let mut ok = false;
        for c in &a.collinear_points {
            if let Some(next) = tree.postbar(b, c) {
                let Some(na) = analysis_of(analysis, next) else {
                    continue;
                };
                let good = na.purely_noncollinear || reaches(tree, analysis, next, memo, out);
                if good {
                    out.insert(next);
                    ok = true;
                }
            }
        }
        memo.insert(b, ok);
        ok
    }
    let mut out = BTreeSet::new();
    let Some(a) = analysis_of(analysis, bar) else {
        return out;
    };
    if a.purely_noncollinear {
        return out;
    }
    let mut memo = BTreeMap::new();
    reaches(tree, analysis, bar, &mut memo, &mut out);
    out
}

/// B itself and every non-collinear finite bar above it supported at a non-collinear point.
pub fn basics_of(tree: &Tree, analysis: &[BarAnalysis], bar: BarId) -> Vec<BarId> {
    let mut out = vec![bar];
    for b in tree.above(bar) {
        if !tree.bars[b].is_finite() {
            continue;
        }
        let Some(a) = analysis_of(analysis, b) else { continue };
        if a.collinear {
            continue;
        }
        let (below, point) = tree.support(b).expect("bar above has a support");
        let supported_noncollinear = analysis_of(analysis, below)
            .map(|pa| pa.noncollinear_points.contains(point))
            .unwrap_or(false);
        if supported_noncollinear {
            out.push(b);
        }
    }
    out
}

/// theta = zeta_D acting on roots: index of the conjugate of each root.
pub fn conjugation_permutation(tree: &Tree) -> Result<Vec<usize>> {
    let d = tree.ramification as u32;
    let mut perm = Vec::with_capacity(tree.roots.len());
    for r in &tree.roots {
        let image = conjugate_series(&r.series, 1, d)?;
        let target = tree
            .roots
            .iter()
            .position(|o| o.side == r.side && o.series == image)
            .ok_or_else(|| Error::InternalInconsistency(format!("conjugate of root {} is not a root", r.name)))?;
        perm.push(target);
    }
    Ok(perm)
}

/// Image of `bar` under theta = zeta_D.
pub fn conjugate_bar(tree: &Tree, perm: &[usize], bar: BarId) -> BarId {
    if bar == GROUND {
        return GROUND;
    }
    let k = tree.bars[bar].members[0];
    let height = tree.bars[bar].height;
    let chain = tree.chain(perm[k]);
    *chain
        .iter()
        .find(|&&b| tree.bars[b].height == height)
        .expect("conjugate bar of equal height")
}

/// theta(z) = theta^n z on a bar of height n/D.
pub fn conjugate_point(tree: &Tree, bar: BarId, z: &CycloRational) -> Result<CycloRational> {
    let d = tree.ramification;
    let h = tree.bars[bar].h();
    let n = (h * Rational64::from_integer(d)).to_integer();
    let theta = tree.field.root_of_unity(d as u32)?;
    Ok(z * &theta.pow(n.rem_euclid(d) as u64))
}

/// Conjugacy classes of finite bars (orbits of theta), sorted by their first bar.
pub fn conjugacy_classes(tree: &Tree) -> Result<Vec<Vec<BarId>>> {
    let perm = conjugation_permutation(tree)?;
    let mut seen = BTreeSet::new();
    let mut classes = Vec::new();
    for b in tree.finite_bars().map(|b| b.id) {
        if seen.contains(&b) {
            continue;
        }
        let mut class = vec![b];
        seen.insert(b);
        let mut cur = conjugate_bar(tree, &perm, b);
        while cur != b {
            if seen.insert(cur) {
                class.push(cur);
            }
            cur = conjugate_bar(tree, &perm, cur);
        }
        class.sort_unstable();
        classes.push(class);
    }
    Ok(classes)
}

/// ASCII rendering: bars with heights, trunks with [s,t], ∘/× at growth points.
pub fn render_tree(tree: &Tree, analysis: &[BarAnalysis]) -> String {
    let mut out = String::new();
    render_bar(tree, analysis, GROUND, "", &mut out);
    out
}

fn render_bar(tree: &Tree, analysis: &[BarAnalysis], bar: BarId, indent: &str, out: &mut String) {
    let b = &tree.bars[bar];
    let mut line = format!("{} h={}", b.name, b.height);
    if let Some(a) = analysis_of(analysis, bar) {
        let _ = write!(line, " nu=({},{})", fmt_exponent(&a.nu_f), fmt_exponent(&a.nu_g));
        if a.collinear {
            line.push_str(" collinear");
        } else if a.purely_noncollinear {
            line.push_str(" purely non-collinear");
        }
    }
    let _ = writeln!(out, "{indent}{line}");
    let trunks: Vec<&Trunk> = tree.trunks_on(bar).collect();
    for (i, t) in trunks.iter().enumerate() {
        let last = i + 1 == trunks.len();
        let mark = match analysis_of(analysis, bar) {
            Some(a) if a.collinear_points.contains(&t.point) => "∘",
            Some(_) => "×",
            None => "·",
        };
        let top = &tree.bars[t.top];
        let label = if top.is_finite() {
            String::new()
        } else {
            format!(" {}", tree.roots[top.members[0]].name)
        };
        let _ = writeln!(
            out,
            "{indent}{}{mark} {} [{},{}]{label}",
            if last { "└─" } else { "├─" },
            t.point,
            t.s,
            t.t
        );
        if top.is_finite() {
            let child = format!("{indent}{}", if last { "   " } else { "│  " });
            render_bar(tree, analysis, t.top, &child, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::CycloField;

    fn q(n: i64) -> Exponent {
        Rational64::from_integer(n)
    }

    fn ex11(k: &Field, a: i64, b: i64) -> (Vec<PuiseuxSeries>, Vec<PuiseuxSeries>) {
        let s = |terms: &[(i64, i64)]| PuiseuxSeries::exact(k, terms.iter().map(|&(e, c)| (q(e), k.int(c))).collect());
        // e = 1, E = 2
        let alpha = vec![s(&[(1, -1)]), s(&[(2, 1), (3, -a)]), s(&[(2, -1), (3, -b)])];
        let beta = vec![s(&[(1, 1)]), s(&[(2, 1), (3, a)]), s(&[(2, -1), (3, b)])];
        (alpha, beta)
    }

    #[test]
    fn example_1_1_shape() {
        let k = CycloField::new(4);
        let (alpha, beta) = ex11(&k, 1, 1);
        let tree = build_tree(&alpha, &beta, 0, 0).unwrap();
        let heights: Vec<String> = tree.finite_bars().map(|b| format!("{}:{}", b.name, b.height)).collect();
        assert_eq!(heights, ["B*:0", "B0:1", "B1:2", "B2:3", "B3:3"]);
        let main = tree.main_trunk().unwrap();
        assert_eq!(main.bimultiplicity(), (3, 3));
        let b0 = tree.by_name("B0").unwrap();
        let marks: Vec<(String, usize, usize)> = tree.trunks_on(b0).map(|t| (t.point.to_string(), t.s, t.t)).collect();
        assert_eq!(marks, [("-1".to_string(), 1, 0), ("0".to_string(), 2, 2), ("1".to_string(), 0, 1)]);
    }

    #[test]
    fn single_root() {
        let k = CycloField::new(4);
        let tree = build_tree(&[PuiseuxSeries::monomial(k.one(), q(1))], &[], 0, 0).unwrap();
        assert_eq!(tree.finite_bars().count(), 1);
        assert_eq!(tree.bars.len(), 2);
        assert!(!tree.bars[1].is_finite());
    }

    #[test]
    fn duplicate_roots_rejected() {
        let k = CycloField::new(4);
        let a = PuiseuxSeries::monomial(k.one(), q(1));
        assert!(matches!(
            build_tree(std::slice::from_ref(&a), std::slice::from_ref(&a), 0, 0),
            Err(Error::InputViolatesSimplicity(_))
        ));
    }

    #[test]
    fn placement_and_truncation() {
        let k = CycloField::new(4);
        let (alpha, beta) = ex11(&k, 1, 1);
        let tree = build_tree(&alpha, &beta, 0, 0).unwrap();
        let xi = PuiseuxSeries::exact(&k, vec![(q(1), k.int(5)), (q(4), k.one())]);
        let p = locate(&tree, &xi).unwrap();
        let b0 = tree.by_name("B0").unwrap();
        assert_eq!(
            p.departure,
            Departure::Leaves {
                bar: b0,
                point: Point::Exact(k.int(5))
            }
        );
        assert_eq!(truncate_relative(&xi, &tree).unwrap(), PuiseuxSeries::monomial(k.int(5), q(1)));
        // between B1 and B2
        let xi = PuiseuxSeries::exact(&k, vec![(q(2), k.one()), (Rational64::new(5, 2), k.one())]);
        let p = locate(&tree, &xi).unwrap();
        assert!(matches!(p.departure, Departure::Bounded { contact: Height::Finite(c), .. } if c == Rational64::new(5, 2)));
        assert_eq!(locate(&tree, &alpha[0]).unwrap().departure, Departure::Root(0));
    }

    #[test]
    fn cusp_conjugacy() {
        let k = CycloField::new(12);
        let w = k.root_of_unity(3).unwrap();
        let alpha: Vec<_> = (0..3).map(|j| PuiseuxSeries::monomial(w.pow(j), Rational64::new(4, 3))).collect();
        let tree = build_tree(&alpha, &[], 0, 1).unwrap();
        let classes = conjugacy_classes(&tree).unwrap();
        assert_eq!(classes.len(), 2);
        let perm = conjugation_permutation(&tree).unwrap();
        let mut leaves: Vec<_> = (0..3).map(|k| tree.leaf(perm[k])).collect();
        leaves.sort_unstable();
        leaves.dedup();
        assert_eq!(leaves.len(), 3);
    }
}
