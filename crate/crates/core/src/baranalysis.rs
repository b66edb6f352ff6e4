//! Per-bar analysis: nu, the determinants Delta, the rational function M_B,
//! collinearity, mero-zeros and the counting predictions.

use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{CycloRational, Field, FieldExt, UniPoly};
use crate::puiseux::{contact_order, fmt_exponent, Exponent, Height};
use crate::treemodel::{analysis_of, basics_of, cover_of, repair_of, BarId, Point, Side, Tree, GROUND};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    F,
    G,
}

#[derive(Clone, Debug)]
pub struct PointData {
    pub point: CycloRational,
    pub p: usize,
    pub q: usize,
    pub delta: Exponent,
}

#[derive(Clone, Debug)]
pub struct BarAnalysis {
    pub bar: BarId,
    pub nu_f: Exponent,
    pub nu_g: Exponent,
    pub points: Vec<PointData>,
    pub collinear_points: Vec<CycloRational>,
    pub noncollinear_points: Vec<CycloRational>,
    /// Numerator of M_B over prod_{N(B)} (z - z_k); zero for a collinear bar.
    pub mero_numerator: UniPoly,
    pub mero_denominator: UniPoly,
    /// Mero-zeros located in the field, with multiplicities (collinear points included).
    pub mero_zeros: Vec<(CycloRational, usize)>,
    /// Monic factor of the numerator carrying the zeros outside the field.
    pub unresolved: UniPoly,
    pub m: usize,
    pub m_star: usize,
    pub n: usize,
    pub c: usize,
    pub tau_total: i64,
    pub mu_total: i64,
    /// Theorem T per point; the unresolved zeros appear pooled as one algebraic point.
    pub t_pred: Vec<(Point, i64)>,
    pub t_total: Option<i64>,
    pub collinear: bool,
    pub purely_noncollinear: bool,
    pub delta_sum: Exponent,
}

impl BarAnalysis {
    pub fn mero_multiplicity(&self, z: &CycloRational) -> usize {
        self.mero_zeros.iter().find(|(c, _)| c == z).map(|(_, m)| *m).unwrap_or(0)
    }

    pub fn is_collinear_point(&self, z: &CycloRational) -> bool {
        self.collinear_points.contains(z)
    }

    pub fn is_pure_mero_zero(&self, z: &CycloRational) -> bool {
        !self.collinear && self.mero_multiplicity(z) > 0 && !self.is_collinear_point(z)
    }

    pub fn unresolved_count(&self) -> usize {
        self.unresolved.degree()
    }

    /// Pure mero-zeros with multiplicities; unresolved ones listed by multiplicity only.
    pub fn pure_multiplicities(&self) -> Result<Vec<usize>> {
        let mut out: Vec<usize> = self
            .mero_zeros
            .iter()
            .filter(|(z, _)| !self.is_collinear_point(z))
            .map(|(_, m)| *m)
            .collect();
        if self.unresolved.degree() > 0 {
            for (factor, mult) in self.unresolved.squarefree_decompose()? {
                out.extend(std::iter::repeat_n(mult, factor.degree()));
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// M_B(z) as a field element, `None` at a pole.
    pub fn mero_value(&self, z: &CycloRational) -> Option<CycloRational> {
        let den = self.mero_denominator.eval(z);
        if den.is_zero() {
            return None;
        }
        Some(&self.mero_numerator.eval(z) / &den)
    }

    /// Human-readable M_B(z).
    pub fn mero_string(&self) -> String {
        if self.collinear {
            return "0".into();
        }
        let num = self.mero_numerator.to_string();
        let terms = self.mero_numerator.coeffs().iter().filter(|c| !c.is_zero()).count();
        let num = if terms > 1 || !self.mero_numerator.leading().is_monomial() {
            format!("({num})")
        } else {
            num
        };
        let den = factored_denominator(&self.noncollinear_points);
        if den.is_empty() {
            num
        } else {
            format!("{num}/{den}")
        }
    }
}

fn factored_denominator(points: &[CycloRational]) -> String {
    let mut parts: Vec<String> = points
        .iter()
        .map(|z| {
            let s = z.to_string();
            if z.is_zero() {
                "z".to_string()
            } else if !z.is_monomial() {
                format!("(z - ({s}))")
            } else if let Some(rest) = s.strip_prefix('-') {
                format!("(z + {rest})")
            } else {
                format!("(z - {s})")
            }
        })
        .collect();
    match parts.len() {
        0 => String::new(),
        1 => parts.remove(0),
        _ => format!("({})", parts.join("*")),
    }
}

fn exponent_to_field(field: &Field, e: Exponent) -> CycloRational {
    field.frac(*e.numer(), *e.denom())
}

/// nu_F(B) = E + sum over the roots of F of min(O(root, lambda_B), h(B)).
pub fn compute_nu(tree: &Tree, bar: BarId, which: Which) -> Result<Exponent> {
    let b = tree.bar(bar);
    let h = b
        .height
        .finite()
        .ok_or_else(|| Error::NotApplicable("bar of infinite height".into()))?;
    let (side, e) = match which {
        Which::F => (Side::F, tree.e1),
        Which::G => (Side::G, tree.e2),
    };
    let mut nu = Rational64::from_integer(e);
    for r in tree.roots.iter().filter(|r| r.side == side) {
        let c = contact_order(&r.series.below(h), &b.lambda)?;
        nu += match c {
            Height::Finite(c) => c.min(h),
            Height::Infinite => h,
        };
    }
    Ok(nu)
}

/// M_B as numerator over prod_{N(B)} (z - z_k), plus N(B).
pub fn mero_function(tree: &Tree, bar: BarId, nu_f: Exponent, nu_g: Exponent) -> (UniPoly, UniPoly, Vec<PointData>) {
    let field = &tree.field;
    let points: Vec<PointData> = tree
        .trunks_on(bar)
        .map(|t| PointData {
            point: t.point.clone(),
            p: t.s,
            q: t.t,
            delta: nu_f * Rational64::from_integer(t.t as i64) - nu_g * Rational64::from_integer(t.s as i64),
        })
        .collect();
    let poles: Vec<&PointData> = points.iter().filter(|d| !d.delta.is_zero()).collect();
    let mut numerator = UniPoly::zero(field, 'z');
    let mut denominator = UniPoly::constant(field.one(), 'z');
    for (k, pk) in poles.iter().enumerate() {
        let mut term = UniPoly::constant(exponent_to_field(field, pk.delta), 'z');
        for (j, pj) in poles.iter().enumerate() {
            if j != k {
                term = term.mul(&UniPoly::linear(&pj.point, 'z'));
            }
        }
        numerator = numerator.add(&term);
        denominator = denominator.mul(&UniPoly::linear(&pk.point, 'z'));
    }
    (numerator, denominator, points)
}

/// Full analysis of one finite bar.
pub fn classify(tree: &Tree, bar: BarId) -> Result<BarAnalysis> {
    let field = tree.field.clone();
    let nu_f = compute_nu(tree, bar, Which::F)?;
    let nu_g = compute_nu(tree, bar, Which::G)?;
    let (numerator, denominator, points) = mero_function(tree, bar, nu_f, nu_g);
    let collinear_points: Vec<CycloRational> = points.iter().filter(|d| d.delta.is_zero()).map(|d| d.point.clone()).collect();
    let noncollinear_points: Vec<CycloRational> = points.iter().filter(|d| !d.delta.is_zero()).map(|d| d.point.clone()).collect();
    let collinear = noncollinear_points.is_empty();
    let purely_noncollinear = collinear_points.is_empty() && !collinear;
    let delta_sum = points.iter().fold(Rational64::zero(), |acc, d| acc + d.delta);
    let mut a = BarAnalysis {
        bar,
        nu_f,
        nu_g,
        c: collinear_points.len(),
        n: noncollinear_points.len(),
        points,
        collinear_points,
        noncollinear_points,
        mero_numerator: numerator.clone(),
        mero_denominator: denominator,
        mero_zeros: vec![],
        unresolved: UniPoly::constant(field.one(), 'z'),
        m: 0,
        m_star: 0,
        tau_total: 0,
        mu_total: 0,
        t_pred: vec![],
        t_total: None,
        collinear,
        purely_noncollinear,
        delta_sum,
    };
    if collinear {
        return Ok(a);
    }
    let (zeros, _) = numerator.roots_in_field()?;
    a.unresolved = numerator.strip_roots(&zeros)?.monic();
    a.m = numerator.degree();
    a.mero_zeros = zeros;
    let on_collinear: usize = a.collinear_points.iter().map(|c| numerator.root_multiplicity(c)).sum();
    a.m_star = a.m - on_collinear;
    fill_predictions(&mut a)?;
    Ok(a)
}

fn fill_predictions(a: &mut BarAnalysis) -> Result<()> {
    let mut pred: Vec<(Point, i64)> = Vec::new();
    for d in &a.points {
        let tau = (d.p + d.q) as i64;
        let mu = if d.delta.is_zero() {
            a.mero_multiplicity(&d.point) as i64
        } else {
            -1
        };
        pred.push((Point::Exact(d.point.clone()), tau + mu));
    }
    for (z, m) in &a.mero_zeros {
        if !a.is_collinear_point(z) {
            pred.push((Point::Exact(z.clone()), *m as i64));
        }
    }
    if a.unresolved.degree() > 0 {
        pred.push((Point::Algebraic(a.unresolved.clone()), a.unresolved.degree() as i64));
    }
    if let Some((p, v)) = pred.iter().find(|(_, v)| *v < 0) {
        return Err(Error::InternalInconsistency(format!("negative Theorem T prediction {v} at {p}")));
    }
    a.tau_total = a.points.iter().map(|d| (d.p + d.q) as i64).sum();
    a.mu_total = a.m as i64 - a.n as i64;
    a.t_total = Some(a.tau_total + a.mu_total);
    a.t_pred = pred;
    Ok(())
}

/// Analyses of every finite bar, ground bar first.
pub fn analyze_tree(tree: &Tree) -> Result<Vec<BarAnalysis>> {
    tree.finite_bars().map(|b| classify(tree, b.id)).collect()
}

fn get(analyses: &[BarAnalysis], bar: BarId) -> Result<&BarAnalysis> {
    analysis_of(analyses, bar).ok_or_else(|| Error::NotApplicable(format!("bar {bar} has no analysis")))
}

/// Theorem T predictions for a non-collinear bar.
pub fn predict_t(analyses: &[BarAnalysis], bar: BarId) -> Result<(Vec<(Point, i64)>, i64)> {
    let a = get(analyses, bar)?;
    match a.t_total {
        Some(t) => Ok((a.t_pred.clone(), t)),
        None => Err(Error::NotApplicable("Theorem T needs a non-collinear bar".into())),
    }
}

/// Theorem N: the postbar at z in N(B), and whether m(B*) + 1 = n(B*).
pub fn check_n(tree: &Tree, analyses: &[BarAnalysis], bar: BarId, z: &CycloRational) -> Result<(BarId, bool)> {
    let a = get(analyses, bar)?;
    if !a.noncollinear_points.contains(z) {
        return Err(Error::NotApplicable(format!("{z} is not a non-collinear point")));
    }
    let post = tree.postbar(bar, z).ok_or(Error::NoPostbar)?;
    if !tree.bar(post).is_finite() {
        return Err(Error::NoPostbar);
    }
    let pa = get(analyses, post)?;
    Ok((post, !pa.collinear && pa.m + 1 == pa.n))
}

/// Theorem C: m_B(c) + sum over the cover of (n - m).
pub fn predict_c(tree: &Tree, analyses: &[BarAnalysis], bar: BarId, c: &CycloRational) -> Result<i64> {
    let a = get(analyses, bar)?;
    if a.collinear || !a.is_collinear_point(c) {
        return Err(Error::NotApplicable(
            "Theorem C needs a collinear point of a non-collinear bar".into(),
        ));
    }
    let cover = cover_of(tree, analyses, bar, c)?;
    let mut total = a.mero_multiplicity(c) as i64;
    for b in cover {
        let ca = get(analyses, b)?;
        total += ca.n as i64 - ca.m as i64;
    }
    Ok(total)
}

/// w(B) = m(B) + sum of n over rep(B).
pub fn weeds(tree: &Tree, analyses: &[BarAnalysis], bar: BarId) -> Result<i64> {
    let a = get(analyses, bar)?;
    if a.collinear {
        return Err(Error::NotApplicable("weeds are counted on non-collinear bars".into()));
    }
    let mut w = a.m as i64;
    for b in repair_of(tree, analyses, bar) {
        let ra = get(analyses, b)?;
        if !ra.collinear {
            w += ra.n as i64;
        }
    }
    Ok(w)
}

/// Sum of w over the basics of B.
pub fn total_via_basics(tree: &Tree, analyses: &[BarAnalysis], bar: BarId) -> Result<i64> {
    let mut total = 0;
    for b in basics_of(tree, analyses, bar) {
        total += weeds(tree, analyses, b)?;
    }
    Ok(total)
}

/// K minus the predicted totals over the cover of 0 on a collinear ground bar.
pub fn ground_residual(tree: &Tree, analyses: &[BarAnalysis], k: usize) -> Result<i64> {
    let g = get(analyses, GROUND)?;
    if !g.collinear {
        return Err(Error::NotApplicable("the ground bar is non-collinear".into()));
    }
    let zero = tree.field.zero();
    if tree.postbar(GROUND, &zero).is_none() {
        return Ok(k as i64);
    }
    let cover = cover_of(tree, analyses, GROUND, &zero)?;
    let mut sum = 0;
    for b in cover {
        sum += get(analyses, b)?.t_total.unwrap_or(0);
    }
    Ok(k as i64 - sum)
}

/// Sign-aware rendering of Delta values.
pub fn fmt_delta(d: &Exponent) -> String {
    if d.is_negative() {
        format!("-{}", fmt_exponent(&-d))
    } else {
        fmt_exponent(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::CycloField;
    use crate::puiseux::PuiseuxSeries;
    use crate::treemodel::build_tree;

    fn q(n: i64) -> Exponent {
        Rational64::from_integer(n)
    }

    #[test]
    fn section_two_example() {
        let k = CycloField::new(4);
        let alpha = vec![PuiseuxSeries::zero(&k)];
        let beta = vec![PuiseuxSeries::monomial(k.one(), q(1)), PuiseuxSeries::monomial(k.int(-1), q(1))];
        let tree = build_tree(&alpha, &beta, 0, 0).unwrap();
        let b0 = tree.by_name("B0").unwrap();
        let a = classify(&tree, b0).unwrap();
        assert_eq!((a.nu_f, a.nu_g), (q(1), q(2)));
        assert_eq!(a.mero_numerator.to_string(), "2");
        assert_eq!(a.mero_string(), "2/((z + 1)*z*(z - 1))");
        assert_eq!((a.m, a.m_star, a.n), (0, 0, 3));
        assert_eq!(a.t_total, Some(0));
    }
}
