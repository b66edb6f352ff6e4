//! Newton–Puiseux expansion of the positive-order roots x = lambda(y) of a
//! bivariate polynomial, with pessimistic truncation bookkeeping.

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::bipoly::squarefree_in_x;
use crate::exactalg::{BiPoly, CycloRational, Field, FieldExt, UniPoly};
use crate::puiseux::{Exponent, Height, PuiseuxSeries};

/// Cap on cluster-splitting stages (stages working on two or more roots).
pub const STAGE_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    /// Endpoint with the smaller x-degree.
    pub left: (u32, i64),
    pub right: (u32, i64),
}

impl Edge {
    /// Order of the roots belonging to this edge.
    pub fn slope(&self) -> Exponent {
        Rational64::new(self.left.1 - self.right.1, (self.right.0 - self.left.0) as i64)
    }

    pub fn length(&self) -> usize {
        (self.right.0 - self.left.0) as usize
    }
}

/// The part of the lower convex hull of the support that governs roots of positive order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// Vertices from (r, 0) towards smaller x-degree.
    pub vertices: Vec<(u32, i64)>,
}

impl NewtonPolygon {
    /// Edges in order of increasing slope.
    pub fn edges(&self) -> Vec<Edge> {
        self.vertices.windows(2).map(|w| Edge { left: w[1], right: w[0] }).collect()
    }
}

fn lower_hull(points: &[(u32, i64)], r: u32) -> Vec<(u32, i64)> {
    // points: one (i, min j) per x-degree i <= r, sorted by i ascending
    let mut hull: Vec<(u32, i64)> = Vec::new();
    let start = points.iter().rposition(|p| p.0 == r).expect("(r,0) present");
    for &p in points[..=start].iter().rev() {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // walking leftwards: keep b only if it lies strictly below segment a-p
            let cross = (a.0 as i64 - b.0 as i64) * (p.1 - b.1) - (a.1 - b.1) * (p.0 as i64 - b.0 as i64);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

fn support_minima(h: &BiPoly, r: u32) -> Vec<(u32, i64)> {
    let mut mins: Vec<Option<i64>> = vec![None; r as usize + 1];
    for (&(i, j), _) in h.terms() {
        if i <= r {
            let slot = &mut mins[i as usize];
            *slot = Some(slot.map_or(j, |m: i64| m.min(j)));
        }
    }
    mins.into_iter().enumerate().filter_map(|(i, m)| m.map(|j| (i as u32, j))).collect()
}

pub fn newton_polygon(f: &BiPoly) -> NewtonPolygon {
    let e = f.y_valuation();
    let h = f.shift_y(-e);
    let r = h.x_order_at_origin();
    let pts = support_minima(&h, r);
    NewtonPolygon {
        vertices: lower_hull(&pts, r),
    }
}

/// Square-free components in x with their multiplicities.
pub fn multiplicity_split(f: &BiPoly) -> Vec<(BiPoly, usize)> {
    let e = f.y_valuation();
    squarefree_in_x(&f.shift_y(-e))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpandedRoot {
    pub series: PuiseuxSeries,
    pub multiplicity: usize,
    /// Number of distinct roots represented (more than one only when they agree to the truncation).
    pub distinct: usize,
}

/// A group of roots whose next coefficient is a root of `poly`, which has no root in the field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnresolvedBranch {
    /// Exact below `exponent`.
    pub prefix: PuiseuxSeries,
    pub exponent: Exponent,
    pub poly: UniPoly,
    pub multiplicity: usize,
}

impl UnresolvedBranch {
    pub fn count(&self) -> usize {
        self.poly.degree() * self.multiplicity
    }
}

#[derive(Clone, Debug)]
pub struct Expansion {
    pub roots: Vec<ExpandedRoot>,
    pub unresolved: Vec<UnresolvedBranch>,
    /// Largest power of y dividing the polynomial.
    pub y_exponent: i64,
    /// Number of positive-order roots with multiplicity.
    pub x_order: usize,
    /// lcm of the ramification indices met, including those of unresolved branches.
    pub ramification: i64,
    pub target: Exponent,
}

impl Expansion {
    pub fn unresolved_count(&self) -> usize {
        self.unresolved.iter().map(|u| u.count()).sum()
    }
}

struct Stage {
    h: BiPoly,
    dc: i64,
    shift: i64,
    prefix: Vec<(Exponent, CycloRational)>,
    exact: bool,
}

struct Solver<'a> {
    field: &'a Field,
    target: Exponent,
    multiplicity: usize,
    stages: usize,
    out: &'a mut Expansion,
}

impl Solver<'_> {
    fn record_cluster(&mut self, st: &Stage, count: usize) {
        if count == 0 {
            return;
        }
        let series = PuiseuxSeries::new(self.field, st.prefix.clone(), Height::Finite(self.target));
        self.out.roots.push(ExpandedRoot {
            series,
            multiplicity: self.multiplicity,
            distinct: count,
        });
    }

    fn solve(&mut self, mut st: Stage, r: u32) -> Result<()> {
        self.out.ramification = self.out.ramification.lcm(&st.dc);
        let t_rem = self.target * Rational64::from_integer(st.dc) - Rational64::from_integer(st.shift);
        if t_rem <= Rational64::zero() {
            self.record_cluster(&st, r as usize);
            return Ok(());
        }
        if r >= 2 {
            self.stages += 1;
            if self.stages > STAGE_CAP {
                return Err(Error::TruncationBudgetExceeded(STAGE_CAP));
            }
        }
        let bound = (t_rem * Rational64::from_integer(r as i64)).ceil().to_integer();
        if st.h.terms().any(|(&(_, j), _)| j > bound) {
            let kept = st.h.terms().filter(|(&(_, j), _)| j <= bound).map(|(&k, c)| (k, c.clone()));
            st.h = BiPoly::from_terms(self.field, kept.collect::<Vec<_>>());
            st.exact = false;
        }
        let pts = support_minima(&st.h, r);
        let i0 = pts[0].0;
        if i0 > 0 {
            if st.exact {
                let series = PuiseuxSeries::exact(self.field, st.prefix.clone());
                self.out.roots.push(ExpandedRoot {
                    series,
                    multiplicity: self.multiplicity,
                    distinct: i0 as usize,
                });
            } else {
                self.record_cluster(&st, i0 as usize);
            }
        }
        let hull = lower_hull(&pts, r);
        let edges = NewtonPolygon { vertices: hull }.edges();
        for edge in edges {
            let rho = edge.slope();
            if rho >= t_rem {
                self.record_cluster(&st, edge.length());
                continue;
            }
            let a = *rho.numer();
            let b = *rho.denom();
            let m = a * edge.left.0 as i64 + b * edge.left.1;
            let mut phi = vec![self.field.zero(); edge.length() + 1];
            for (&(i, j), c) in st.h.terms() {
                if i >= edge.left.0 && i <= edge.right.0 && a * i as i64 + b * j == m {
                    phi[(i - edge.left.0) as usize] = c.clone();
                }
            }
            let phi = UniPoly::new(self.field, phi, 'c');
            let (roots, unresolved) = phi.roots_in_field()?;
            let new_shift = st.shift * b + a;
            let new_dc = st.dc * b;
            let next_exp = Rational64::new(new_shift, new_dc);
            if unresolved > 0 {
                let rest = phi.strip_roots(&roots)?;
                self.out.ramification = self.out.ramification.lcm(&new_dc);
                self.out.unresolved.push(UnresolvedBranch {
                    prefix: PuiseuxSeries::new(self.field, st.prefix.clone(), Height::Finite(next_exp)),
                    exponent: next_exp,
                    poly: rest.monic().with_var('z'),
                    multiplicity: self.multiplicity,
                });
            }
            for (c, mu) in roots {
                let h2 = descend(&st.h, &c, a, b, m, if st.exact { None } else { Some(bound) });
                let mut prefix = st.prefix.clone();
                prefix.push((next_exp, c.clone()));
                let r2 = h2.x_order_at_origin();
                if h2.y_valuation() != 0 || r2 as usize != mu {
                    return Err(Error::InternalInconsistency(format!(
                        "edge root of multiplicity {mu} produced {r2} roots"
                    )));
                }
                self.solve(
                    Stage {
                        h: h2,
                        dc: new_dc,
                        shift: new_shift,
                        prefix,
                        exact: st.exact,
                    },
                    r2,
                )?;
            }
        }
        Ok(())
    }
}

/// tau^(-m) H(tau^a (c + u), tau^b), keeping only the exactly known part when
/// H is known for t-exponents up to `prec`.
fn descend(h: &BiPoly, c: &CycloRational, a: i64, b: i64, m: i64, prec: Option<i64>) -> BiPoly {
    let field = h.field().clone();
    let new_prec = prec.map(|p| b * p - m);
    let maxdeg = h.x_degree() as usize;
    // binomial rows: (c + u)^i = sum_k binom(i,k) c^(i-k) u^k
    let mut cpow = vec![field.one()];
    for k in 1..=maxdeg {
        cpow.push(&cpow[k - 1] * c);
    }
    let mut binom = vec![vec![1i64]];
    for i in 1..=maxdeg {
        let prev = &binom[i - 1];
        let mut row = vec![1i64; i + 1];
        for k in 1..i {
            row[k] = prev[k - 1] + prev[k];
        }
        binom.push(row);
    }
    let mut out = BiPoly::zero(&field);
    for (&(i, j), coef) in h.terms() {
        let texp = a * i as i64 + b * j - m;
        if new_prec.is_some_and(|p| texp > p) {
            continue;
        }
        for k in 0..=i as usize {
            let scal = &(coef * &cpow[i as usize - k]) * &field.int(binom[i as usize][k]);
            out.add_term(k as u32, texp, &scal);
        }
    }
    out
}

fn expand_component(field: &Field, component: &BiPoly, multiplicity: usize, target: Exponent, out: &mut Expansion) -> Result<()> {
    let e = component.y_valuation();
    let h = component.shift_y(-e);
    let r = h.x_order_at_origin();
    if r == 0 {
        return Ok(());
    }
    let mut solver = Solver {
        field,
        target,
        multiplicity,
        stages: 0,
        out,
    };
    solver.solve(
        Stage {
            h,
            dc: 1,
            shift: 0,
            prefix: vec![],
            exact: true,
        },
        r,
    )
}

/// Expansion in count mode: branches whose coefficients leave the field are
/// reported in `unresolved` with exact counts.
pub fn expand_roots_counting(f: &BiPoly, target: Exponent) -> Result<Expansion> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_laurent() && f.y_valuation() < 0 {
        return Err(Error::NotApplicable(
            "expansion needs a polynomial; clear y-denominators first".into(),
        ));
    }
    let field = f.field().clone();
    let mut out = Expansion {
        roots: vec![],
        unresolved: vec![],
        y_exponent: f.y_valuation(),
        x_order: f.x_order_at_origin() as usize,
        ramification: 1,
        target,
    };
    for (component, mult) in multiplicity_split(f) {
        expand_component(&field, &component, mult, target, &mut out)?;
    }
    let found: usize = out.roots.iter().map(|r| r.distinct * r.multiplicity).sum::<usize>() + out.unresolved_count();
    if found != out.x_order {
        return Err(Error::InternalInconsistency(format!(
            "expansion found {found} roots, expected {}",
            out.x_order
        )));
    }
    out.roots.sort_by_key(|a| series_key(&a.series));
    Ok(out)
}

/// Strict expansion: every branch must be resolvable in the working field.
pub fn expand_roots(f: &BiPoly, target: Exponent) -> Result<(Vec<ExpandedRoot>, i64)> {
    let exp = expand_roots_counting(f, target)?;
    if !exp.unresolved.is_empty() {
        return Err(Error::UnresolvedBranch {
            count: exp.unresolved_count(),
        });
    }
    Ok((exp.roots, exp.y_exponent))
}

/// Canonical ordering key for series: exponents and coefficients lexicographically.
pub fn series_key(s: &PuiseuxSeries) -> Vec<(Exponent, CycloRational)> {
    s.terms().to_vec()
}

/// y-order of `f` along an expanded root, as a check that it is a root to the truncation.
pub fn residual_order(f: &BiPoly, root: &ExpandedRoot) -> Result<Height> {
    let exact = PuiseuxSeries::exact(f.field(), root.series.terms().to_vec());
    crate::puiseux::order_along_arc(f, &exact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::CycloField;

    fn q(n: i64) -> Exponent {
        Rational64::from_integer(n)
    }

    #[test]
    fn polygons() {
        let k = CycloField::new(4);
        let x = BiPoly::x(&k);
        let y = BiPoly::y(&k);
        assert_eq!(newton_polygon(&x.pow(2).sub(&y.pow(2))).vertices, vec![(2, 0), (0, 2)]);
        assert_eq!(newton_polygon(&x.pow(3).sub(&y.pow(4))).vertices, vec![(3, 0), (0, 4)]);
        let f = x
            .pow(3)
            .scale(&k.int(8))
            .sub(&x.mul(&y.pow(8)).scale(&k.int(20)))
            .sub(&y.pow(14).scale(&k.int(18)));
        let np = newton_polygon(&f);
        assert_eq!(np.vertices, vec![(3, 0), (1, 8), (0, 14)]);
        let slopes: Vec<_> = np.edges().iter().map(|e| e.slope()).collect();
        assert_eq!(slopes, vec![q(4), q(6)]);
    }

    #[test]
    fn simple_expansions() {
        let k = CycloField::new(4);
        let x = BiPoly::x(&k);
        let y = BiPoly::y(&k);
        let (roots, e) = expand_roots(&x.pow(2).sub(&y.pow(2)), q(5)).unwrap();
        assert_eq!(e, 0);
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|r| r.series.trunc() == Height::Infinite));
        let k12 = CycloField::new(12);
        let x = BiPoly::x(&k12);
        let y = BiPoly::y(&k12);
        let (roots, _) = expand_roots(&x.pow(3).sub(&y.pow(4)), q(3)).unwrap();
        assert_eq!(roots.len(), 3);
        for r in &roots {
            assert_eq!(r.series.terms()[0].0, Rational64::new(4, 3));
            assert!(r.series.terms()[0].1.pow(3).is_one());
        }
    }

    #[test]
    fn multiplicities() {
        let k = CycloField::new(4);
        let x = BiPoly::x(&k);
        let y = BiPoly::y(&k);
        let f = x.sub(&y).pow(2).mul(&x);
        let parts = multiplicity_split(&f);
        assert_eq!(parts.iter().map(|p| p.1).collect::<Vec<_>>(), vec![1, 2]);
        let (roots, _) = expand_roots(&f, q(3)).unwrap();
        let mut mults: Vec<_> = roots.iter().map(|r| r.multiplicity).collect();
        mults.sort();
        assert_eq!(mults, vec![1, 2]);
    }

    #[test]
    fn unresolved_counting() {
        let k = CycloField::new(4);
        let x = BiPoly::x(&k);
        let y = BiPoly::y(&k);
        let f = x.pow(2).sub(&y.pow(2).scale(&k.int(2))).mul(&x.sub(&y.pow(3)));
        assert!(matches!(expand_roots(&f, q(4)), Err(Error::UnresolvedBranch { count: 2 })));
        let exp = expand_roots_counting(&f, q(4)).unwrap();
        assert_eq!(exp.unresolved_count(), 2);
        assert_eq!(exp.roots.len(), 1);
    }
}
