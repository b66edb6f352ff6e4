//! Truncated fractional power series in y and orders of polynomials along arcs.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{BiPoly, CycloRational, Field, FieldExt, UniPoly};

pub type Exponent = Rational64;

pub fn exponent(num: i64, den: i64) -> Exponent {
    Rational64::new(num, den)
}

/// A height or truncation: a rational or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Height {
    Finite(Exponent),
    Infinite,
}

impl Height {
    pub fn finite(&self) -> Option<Exponent> {
        match self {
            Height::Finite(e) => Some(*e),
            Height::Infinite => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Height::Finite(_))
    }
}

impl From<Exponent> for Height {
    fn from(e: Exponent) -> Self {
        Height::Finite(e)
    }
}

impl PartialOrd for Height {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Height {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Height::Finite(a), Height::Finite(b)) => a.cmp(b),
            (Height::Finite(_), Height::Infinite) => Ordering::Less,
            (Height::Infinite, Height::Finite(_)) => Ordering::Greater,
            (Height::Infinite, Height::Infinite) => Ordering::Equal,
        }
    }
}

pub fn fmt_exponent(e: &Exponent) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Finite(e) => f.write_str(&fmt_exponent(e)),
            Height::Infinite => f.write_str("inf"),
        }
    }
}

/// A fractional power series in y known exactly below `trunc`.
#[derive(Clone, PartialEq, Eq)]
pub struct PuiseuxSeries {
    field: Field,
    terms: Vec<(Exponent, CycloRational)>,
    trunc: Height,
}

impl PuiseuxSeries {
    pub fn new(field: &Field, terms: Vec<(Exponent, CycloRational)>, trunc: Height) -> Self {
        let mut merged: BTreeMap<Exponent, CycloRational> = BTreeMap::new();
        for (e, c) in terms {
            if Height::Finite(e) >= trunc {
                continue;
            }
            let entry = merged.entry(e).or_insert_with(|| field.zero());
            *entry += &c;
        }
        PuiseuxSeries {
            field: field.clone(),
            terms: merged.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
            trunc,
        }
    }

    /// A finite exact sum (infinite truncation).
    pub fn exact(field: &Field, terms: Vec<(Exponent, CycloRational)>) -> Self {
        Self::new(field, terms, Height::Infinite)
    }

    pub fn zero(field: &Field) -> Self {
        Self::exact(field, vec![])
    }

    pub fn monomial(c: CycloRational, e: Exponent) -> Self {
        let field = c.field().clone();
        Self::exact(&field, vec![(e, c)])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> &[(Exponent, CycloRational)] {
        &self.terms
    }

    pub fn trunc(&self) -> Height {
        self.trunc
    }

    pub fn with_trunc(&self, trunc: Height) -> Self {
        Self::new(&self.field, self.terms.clone(), trunc.min(self.trunc))
    }

    /// Order of the series; `Err` when it vanishes below a finite truncation.
    pub fn order(&self) -> Result<Height> {
        match (self.terms.first(), self.trunc) {
            (Some((e, _)), _) => Ok(Height::Finite(*e)),
            (None, Height::Infinite) => Ok(Height::Infinite),
            (None, Height::Finite(t)) => Err(Error::Indeterminate(format!(
                "series vanishes below its truncation {}",
                fmt_exponent(&t)
            ))),
        }
    }

    /// Coefficient of y^e; `None` if e is at or beyond the truncation.
    pub fn coeff(&self, e: Exponent) -> Option<CycloRational> {
        if Height::Finite(e) >= self.trunc {
            return None;
        }
        Some(
            self.terms
                .iter()
                .find(|(x, _)| *x == e)
                .map(|(_, c)| c.clone())
                .unwrap_or_else(|| self.field.zero()),
        )
    }

    /// Exact series of the terms with exponent below `h`.
    pub fn below(&self, h: Exponent) -> Self {
        Self::exact(&self.field, self.terms.iter().filter(|(e, _)| *e < h).cloned().collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::new(&self.field, terms, self.trunc.min(other.trunc))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let neg = other.terms.iter().map(|(e, c)| (*e, -c)).collect();
        self.add(&Self::new(&self.field, neg, other.trunc))
    }

    pub fn plus_term(&self, e: Exponent, c: CycloRational) -> Self {
        self.add(&Self::monomial(c, e))
    }

    /// Least common denominator of all exponents and the truncation.
    pub fn denominator(&self) -> i64 {
        let mut d = self.terms.iter().fold(1i64, |acc, (e, _)| acc.lcm(e.denom()));
        if let Height::Finite(t) = self.trunc {
            d = d.lcm(t.denom());
        }
        d
    }

    pub fn embed(&self, target: &Field) -> Result<Self> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| Ok((*e, c.embed(target)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(target, terms, self.trunc))
    }
}

fn coeff_string(c: &CycloRational) -> String {
    if c.is_monomial() {
        c.to_string()
    } else {
        format!("({c})")
    }
}

fn power_string(e: &Exponent) -> String {
    if e.is_zero() {
        String::new()
    } else if e.is_one() {
        "y".to_string()
    } else if e.is_integer() {
        format!("y^{}", e.numer())
    } else {
        format!("y^({})", fmt_exponent(e))
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.terms {
            let mut s = coeff_string(c);
            let neg = s.starts_with('-');
            if neg {
                s.remove(0);
            }
            let p = power_string(e);
            let body = match (p.is_empty(), s == "1") {
                (true, _) => s,
                (false, true) => p,
                (false, false) => format!("{s}*{p}"),
            };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            f.write_str(&body)?;
            first = false;
        }
        if let Height::Finite(t) = self.trunc {
            if !first {
                f.write_str(" + ")?;
            }
            let p = power_string(&t);
            write!(f, "O({})", if p.is_empty() { "1".to_string() } else { p })?;
        } else if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// O_y(a - b).
pub fn contact_order(a: &PuiseuxSeries, b: &PuiseuxSeries) -> Result<Height> {
    a.sub(b).order()
}

/// Multiply the coefficient of y^(n/D) by theta^n, theta = zeta_D^k.
pub fn conjugate_series(a: &PuiseuxSeries, k: i64, d: u32) -> Result<PuiseuxSeries> {
    let theta = a.field.root_of_unity(d)?;
    let terms = a
        .terms
        .iter()
        .map(|(e, c)| {
            let n = *e * Rational64::from_integer(d as i64);
            if !n.is_integer() {
                return Err(Error::FieldTooSmall(format!(
                    "exponent {} has denominator not dividing {d}",
                    fmt_exponent(e)
                )));
            }
            let power = (n.to_integer() * k).rem_euclid(d as i64);
            Ok((*e, c * &theta.pow(power as u64)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PuiseuxSeries::new(&a.field, terms, a.trunc))
}

/// The polynomial `F(prefix(t) + z*t^tail_t, t^d)` as a BiPoly in (z, t),
/// where the prefix exponents are scaled by `d`.
fn substitute(f: &BiPoly, prefix: &[(Exponent, CycloRational)], d: i64, tail_t: Option<i64>) -> BiPoly {
    let field = f.field().clone();
    let mut arc = BiPoly::zero(&field);
    for (e, c) in prefix {
        let t = (*e * Rational64::from_integer(d)).to_integer();
        arc.add_term(0, t, c);
    }
    if let Some(m) = tail_t {
        arc.add_term(1, m, &field.one());
    }
    let xdeg = f.x_degree();
    let mut powers = vec![BiPoly::constant(field.one())];
    for i in 1..=xdeg {
        powers.push(powers[i as usize - 1].mul(&arc));
    }
    let mut out = BiPoly::zero(&field);
    for (&(i, j), c) in f.terms() {
        let term = powers[i as usize].shift_y(j * d).scale(c);
        out = out.add(&term);
    }
    out
}

/// Coefficients L_e(z) of t^e, in increasing e.
fn layers(p: &BiPoly) -> BTreeMap<i64, UniPoly> {
    let field = p.field().clone();
    let mut grouped: BTreeMap<i64, Vec<(u32, CycloRational)>> = BTreeMap::new();
    for (&(i, j), c) in p.terms() {
        grouped.entry(j).or_default().push((i, c.clone()));
    }
    grouped
        .into_iter()
        .map(|(e, items)| {
            let deg = items.iter().map(|x| x.0).max().unwrap_or(0) as usize;
            let mut coeffs = vec![field.zero(); deg + 1];
            for (i, c) in items {
                coeffs[i as usize] = c;
            }
            (e, UniPoly::new(&field, coeffs, 'z'))
        })
        .collect()
}

fn common_denominator(xi: &PuiseuxSeries, extra: &[Exponent]) -> i64 {
    extra.iter().fold(xi.denominator(), |acc, e| acc.lcm(e.denom()))
}

/// Exact y-order of F(xi(y), y). Infinite when xi is an exact root.
pub fn order_along_arc(f: &BiPoly, xi: &PuiseuxSeries) -> Result<Height> {
    let d = common_denominator(xi, &[]);
    let dq = Rational64::from_integer(d);
    match xi.trunc {
        Height::Infinite => {
            let sub = substitute(f, &xi.terms, d, None);
            if sub.is_zero() {
                Ok(Height::Infinite)
            } else {
                Ok(Height::Finite(Rational64::new(sub.y_valuation(), d)))
            }
        }
        Height::Finite(t) => {
            let m = (t * dq).to_integer();
            let sub = substitute(f, &xi.terms, d, Some(m));
            let Some((e, lead)) = layers(&sub).into_iter().next() else {
                return Err(Error::TruncationTooShort(
                    "polynomial vanishes identically along the known part of the arc".into(),
                ));
            };
            if lead.is_constant() {
                Ok(Height::Finite(Rational64::new(e, d)))
            } else {
                Err(Error::TruncationTooShort(format!(
                    "leading term at y^{} depends on unknown tail terms",
                    fmt_exponent(&Rational64::new(e, d))
                )))
            }
        }
    }
}

/// y-order of F along arcs `prefix + c*y^exponent (+ tail)` for every root c of
/// `roots_of`. With `tail_unknown` nothing is known beyond the exponent;
/// otherwise the arcs are exactly `prefix + c*y^exponent`.
pub fn order_along_algebraic_arc(
    f: &BiPoly,
    prefix: &PuiseuxSeries,
    exponent: Exponent,
    roots_of: &UniPoly,
    tail_unknown: bool,
) -> Result<Height> {
    let d = common_denominator(prefix, &[exponent]);
    let m = (exponent * Rational64::from_integer(d)).to_integer();
    let psi = roots_of.clone().with_var('z');
    let sub = substitute(f, prefix.below(exponent).terms(), d, Some(m));
    for (e, layer) in layers(&sub) {
        let g = layer.gcd(&psi);
        if g.is_constant() {
            return Ok(Height::Finite(Rational64::new(e, d)));
        }
        let r = layer.div_rem(&psi)?.1;
        if tail_unknown || !r.is_zero() {
            return Err(Error::TruncationTooShort(format!(
                "order along algebraic arc is not determined at y^{}",
                fmt_exponent(&Rational64::new(e, d))
            )));
        }
    }
    Ok(Height::Infinite)
}

/// O_y F(lambda(y) + z*y^h, y) for an indeterminate z, with the certificate that
/// the leading coefficient (a polynomial in z) is not identically zero.
pub fn generic_order(f: &BiPoly, lambda: &PuiseuxSeries, h: Exponent) -> Result<Exponent> {
    let d = common_denominator(lambda, &[h]);
    let m = (h * Rational64::from_integer(d)).to_integer();
    let sub = substitute(f, lambda.below(h).terms(), d, Some(m));
    match layers(&sub).into_iter().next() {
        Some((e, _)) => Ok(Rational64::new(e, d)),
        None => Err(Error::ZeroPolynomial),
    }
}

/// The polynomial L(z) with F(lambda + z*y^h) = L(z) y^nu + (higher), nu generic.
pub fn leading_polynomial(f: &BiPoly, lambda: &PuiseuxSeries, h: Exponent) -> Result<(Exponent, UniPoly)> {
    let d = common_denominator(lambda, &[h]);
    let m = (h * Rational64::from_integer(d)).to_integer();
    let sub = substitute(f, lambda.below(h).terms(), d, Some(m));
    match layers(&sub).into_iter().next() {
        Some((e, l)) => Ok((Rational64::new(e, d), l)),
        None => Err(Error::ZeroPolynomial),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::CycloField;

    fn q(n: i64) -> Exponent {
        Rational64::from_integer(n)
    }

    #[test]
    fn contact_examples() {
        let k = CycloField::new(4);
        let a = PuiseuxSeries::monomial(k.one(), q(1));
        let b = PuiseuxSeries::monomial(k.int(-1), q(1));
        assert_eq!(contact_order(&a, &b).unwrap(), Height::Finite(q(1)));
        assert_eq!(contact_order(&a, &a).unwrap(), Height::Infinite);
        let c = a.with_trunc(Height::Finite(q(3)));
        assert!(contact_order(&c, &c).is_err());
        // e = 1, E = 2, A = 1
        let base = PuiseuxSeries::exact(&k, vec![(q(2), k.one())]);
        let u = base.plus_term(q(3), k.one());
        let v = base.plus_term(q(3), k.int(-1));
        assert_eq!(contact_order(&u, &v).unwrap(), Height::Finite(q(3)));
    }

    #[test]
    fn orders_along_arcs() {
        let k = CycloField::new(4);
        let x = BiPoly::x(&k);
        let y = BiPoly::y(&k);
        let f = x.pow(2).sub(&y.pow(2));
        let xi = PuiseuxSeries::monomial(k.frac(1, 2), q(1));
        assert_eq!(order_along_arc(&f, &xi).unwrap(), Height::Finite(q(2)));
        let g = x.pow(3).sub(&y.pow(4));
        let xi = PuiseuxSeries::monomial(k.one(), q(2));
        assert_eq!(order_along_arc(&g, &xi).unwrap(), Height::Finite(q(4)));
        // truncated arc: y + O(y^2) along x^2 - y^2 is undetermined
        let xi = PuiseuxSeries::new(&k, vec![(q(1), k.one())], Height::Finite(q(2)));
        assert!(order_along_arc(&f, &xi).is_err());
        let xi = PuiseuxSeries::new(&k, vec![(q(1), k.int(2))], Height::Finite(q(2)));
        assert_eq!(order_along_arc(&f, &xi).unwrap(), Height::Finite(q(2)));
    }

    #[test]
    fn conjugation() {
        let k = CycloField::new(12);
        let a = PuiseuxSeries::monomial(k.one(), Rational64::new(4, 3));
        let b = conjugate_series(&a, 1, 3).unwrap();
        let w = k.root_of_unity(3).unwrap();
        assert_eq!(b, PuiseuxSeries::monomial(w, Rational64::new(4, 3)));
        assert_eq!(conjugate_series(&a, 0, 3).unwrap(), a);
        assert!(conjugate_series(&a, 1, 5).is_err());
    }

    #[test]
    fn rendering() {
        let k = CycloField::new(4);
        let s = PuiseuxSeries::new(
            &k,
            vec![(Rational64::new(4, 3), k.one()), (q(2), k.frac(-1, 3))],
            Height::Finite(Rational64::new(7, 3)),
        );
        assert_eq!(s.to_string(), "y^(4/3) - 1/3*y^2 + O(y^(7/3))");
    }
}
