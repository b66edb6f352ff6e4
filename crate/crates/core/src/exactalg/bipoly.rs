//! Sparse bivariate polynomials in x and y over Q(zeta_N), Laurent in y on request.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

use super::cyclo::{CycloRational, Field, FieldExt};
use super::unipoly::UniPoly;

#[derive(Clone)]
pub struct BiPoly {
    field: Field,
    terms: BTreeMap<(u32, i64), CycloRational>,
    laurent: bool,
}

/// Equality of values; the Laurent flag is ignored.
impl PartialEq for BiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.terms == other.terms
    }
}

impl Eq for BiPoly {}

impl BiPoly {
    pub fn zero(field: &Field) -> Self {
        BiPoly {
            field: field.clone(),
            terms: BTreeMap::new(),
            laurent: false,
        }
    }

    pub fn constant(c: CycloRational) -> Self {
        let field = c.field().clone();
        Self::monomial(c, 0, 0).with_field(&field)
    }

    fn with_field(mut self, field: &Field) -> Self {
        self.field = field.clone();
        self
    }

    pub fn monomial(c: CycloRational, xexp: u32, yexp: i64) -> Self {
        let mut p = Self::zero(c.field());
        p.laurent = yexp < 0;
        if !c.is_zero() {
            p.terms.insert((xexp, yexp), c);
        }
        p
    }

    pub fn x(field: &Field) -> Self {
        Self::monomial(field.one(), 1, 0)
    }

    pub fn y(field: &Field) -> Self {
        Self::monomial(field.one(), 0, 1)
    }

    pub fn from_terms(field: &Field, terms: impl IntoIterator<Item = ((u32, i64), CycloRational)>) -> Self {
        let mut p = Self::zero(field);
        for ((i, j), c) in terms {
            p.add_term(i, j, &c);
        }
        p
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_laurent(&self) -> bool {
        self.laurent
    }

    /// Mark the polynomial as Laurent in y (negative y-exponents allowed).
    pub fn into_laurent(mut self) -> Self {
        self.laurent = true;
        self
    }

    /// Clear the Laurent flag when no negative y-exponents remain.
    pub fn normalize_laurent(mut self) -> Self {
        self.laurent = self.terms.keys().any(|&(_, j)| j < 0);
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, i64), &CycloRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: i64) -> CycloRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, i: u32, j: i64, c: &CycloRational) {
        if c.is_zero() {
            return;
        }
        if j < 0 {
            self.laurent = true;
        }
        let remove = match self.terms.get_mut(&(i, j)) {
            Some(v) => {
                *v += c;
                v.is_zero()
            }
            None => {
                self.terms.insert((i, j), c.clone());
                false
            }
        };
        if remove {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn x_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn y_degree(&self) -> i64 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// Largest power of y dividing the polynomial (smallest y-exponent present).
    pub fn y_valuation(&self) -> i64 {
        self.terms.keys().map(|k| k.1).min().unwrap_or(0)
    }

    /// Number of roots of positive order: the x-order of (F / y^E)(x, 0).
    pub fn x_order_at_origin(&self) -> u32 {
        let e = self.y_valuation();
        self.terms.keys().filter(|k| k.1 == e).map(|k| k.0).min().unwrap_or(0)
    }

    /// Total-degree order at the origin.
    pub fn order(&self) -> i64 {
        self.terms.keys().map(|&(i, j)| i as i64 + j).min().unwrap_or(0)
    }

    /// Multiply by y^k.
    pub fn shift_y(&self, k: i64) -> Self {
        let mut p = Self::zero(&self.field);
        for (&(i, j), c) in &self.terms {
            p.add_term(i, j + k, c);
        }
        p.laurent = self.laurent && p.terms.keys().any(|&(_, j)| j < 0) || p.laurent;
        p
    }

    pub fn neg(&self) -> Self {
        let mut p = self.clone();
        for v in p.terms.values_mut() {
            *v = -&*v;
        }
        p
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        p.laurent |= other.laurent;
        for (&(i, j), c) in &other.terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &CycloRational) -> Self {
        let mut p = Self::zero(&self.field);
        p.laurent = self.laurent;
        for (&(i, j), v) in &self.terms {
            p.add_term(i, j, &(v * c));
        }
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self::zero(&self.field);
        p.laurent = self.laurent || other.laurent;
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &other.terms {
                p.add_term(i1 + i2, j1 + j2, &(a * b));
            }
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.field.one());
        acc.laurent = self.laurent;
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn deriv_x(&self) -> Self {
        let mut p = Self::zero(&self.field);
        p.laurent = self.laurent;
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                p.add_term(i - 1, j, &(c * &self.field.int(i as i64)));
            }
        }
        p
    }

    pub fn deriv_y(&self) -> Self {
        let mut p = Self::zero(&self.field);
        p.laurent = self.laurent;
        for (&(i, j), c) in &self.terms {
            if j != 0 {
                p.add_term(i, j - 1, &(c * &self.field.int(j)));
            }
        }
        p
    }

    /// Substitute x -> `x_image`, y -> `y_image`. A negative y-exponent requires
    /// `y_image` to be a monomial.
    pub fn compose(&self, x_image: &BiPoly, y_image: &BiPoly) -> Result<BiPoly> {
        let xmax = self.x_degree();
        let mut xpows = vec![BiPoly::constant(self.field.one())];
        for k in 1..=xmax {
            xpows.push(xpows[k as usize - 1].mul(x_image));
        }
        let ymin = self.y_valuation().min(0);
        let ymax = self.y_degree().max(0);
        let y_inv = if ymin < 0 {
            if y_image.num_terms() != 1 {
                return Err(Error::NotApplicable("negative y-exponent under a non-monomial substitution".into()));
            }
            let (&(i, j), c) = y_image.terms.iter().next().unwrap();
            if i != 0 {
                return Err(Error::NotApplicable("inverse of a monomial involving x".into()));
            }
            Some(BiPoly::monomial(c.inv()?, 0, -j))
        } else {
            None
        };
        let mut ypows: BTreeMap<i64, BiPoly> = BTreeMap::new();
        ypows.insert(0, BiPoly::constant(self.field.one()));
        for k in 1..=ymax {
            let prev = ypows[&(k - 1)].clone();
            ypows.insert(k, prev.mul(y_image));
        }
        if let Some(inv) = &y_inv {
            for k in 1..=(-ymin) {
                let prev = ypows[&(1 - k)].clone();
                ypows.insert(-k, prev.mul(inv));
            }
        }
        let mut out = BiPoly::zero(&self.field);
        for (&(i, j), c) in &self.terms {
            out = out.add(&xpows[i as usize].mul(&ypows[&j]).scale(c));
        }
        Ok(out.normalize_laurent())
    }

    /// Coefficient of x^i as a polynomial in y (requires no negative y-exponents).
    pub fn x_coefficient(&self, i: u32) -> UniPoly {
        let deg = self.y_degree().max(0) as usize;
        let mut coeffs = vec![self.field.zero(); deg + 1];
        for (&(a, j), c) in &self.terms {
            if a == i {
                assert!(j >= 0, "x_coefficient of a Laurent polynomial");
                coeffs[j as usize] = c.clone();
            }
        }
        UniPoly::new(&self.field, coeffs, 'y')
    }

    pub fn embed(&self, target: &Field) -> Result<BiPoly> {
        let mut p = BiPoly::zero(target);
        p.laurent = self.laurent;
        for (&(i, j), c) in &self.terms {
            p.add_term(i, j, &c.embed(target)?);
        }
        Ok(p)
    }

    /// `other` is a constant multiple of `self`.
    pub fn is_associate(&self, other: &BiPoly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        if self.terms.len() != other.terms.len() {
            return false;
        }
        let (k, a) = self.terms.iter().next().unwrap();
        let Some(b) = other.terms.get(k) else {
            return false;
        };
        let ratio = b / a;
        self.scale(&ratio) == *other
    }
}

fn wrap(c: &CycloRational) -> String {
    if c.is_monomial() {
        c.to_string()
    } else {
        format!("({c})")
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (n, key) in keys.iter().enumerate() {
            let c = &self.terms[key];
            let mut s = wrap(c);
            let neg = s.starts_with('-');
            if neg {
                s.remove(0);
            }
            let mut mono = Vec::new();
            match key.0 {
                0 => {}
                1 => mono.push("x".to_string()),
                k => mono.push(format!("x^{k}")),
            }
            match key.1 {
                0 => {}
                1 => mono.push("y".to_string()),
                k if k < 0 => mono.push(format!("y^({k})")),
                k => mono.push(format!("y^{k}")),
            }
            let body = if mono.is_empty() {
                s
            } else if s == "1" {
                mono.join("*")
            } else {
                format!("{}*{}", s, mono.join("*"))
            };
            if n == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            f.write_str(&body)?;
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Polynomials in x with coefficients in K[y], indexed by x-degree.
#[derive(Clone, Debug)]
pub(crate) struct XPoly(Vec<UniPoly>);

impl XPoly {
    pub fn from_bipoly(p: &BiPoly) -> Self {
        let mut v: Vec<UniPoly> = (0..=p.x_degree()).map(|i| p.x_coefficient(i)).collect();
        while v.len() > 1 && v.last().unwrap().is_zero() {
            v.pop();
        }
        XPoly(v)
    }

    pub fn to_bipoly(&self, field: &Field) -> BiPoly {
        let mut out = BiPoly::zero(field);
        for (i, c) in self.0.iter().enumerate() {
            for (j, a) in c.coeffs().iter().enumerate() {
                out.add_term(i as u32, j as i64, a);
            }
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    fn degree(&self) -> usize {
        self.0.len() - 1
    }

    fn lead(&self) -> &UniPoly {
        self.0.last().unwrap()
    }

    fn trim(mut self) -> Self {
        while self.0.len() > 1 && self.0.last().unwrap().is_zero() {
            self.0.pop();
        }
        self
    }

    fn content(&self) -> UniPoly {
        let field = self.0[0].field().clone();
        let mut g = UniPoly::zero(&field, 'y');
        for c in &self.0 {
            g = g.gcd(c);
            if g.is_constant() && !g.is_zero() {
                break;
            }
        }
        g
    }

    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        let mut out = XPoly(self.0.iter().map(|a| a.div_exact(&c).expect("content divides")).collect());
        // normalize the leading coefficient to be monic in y
        let lc = out.lead().leading();
        let inv = lc.inv().expect("nonzero");
        for a in out.0.iter_mut() {
            *a = a.scale(&inv);
        }
        out
    }

    /// Pseudo-division: returns (q, r) with lc(b)^k * self = q*b + r.
    fn pseudo_divrem(&self, b: &XPoly) -> (XPoly, XPoly) {
        let field = self.0[0].field().clone();
        let zero = UniPoly::zero(&field, 'y');
        let db = b.degree();
        let mut r = self.clone().trim();
        if r.is_zero() || r.degree() < db {
            return (XPoly(vec![zero]), r);
        }
        let mut q = XPoly(vec![zero.clone(); r.degree() - db + 1]);
        let lb = b.lead().clone();
        while !r.is_zero() && r.degree() >= db {
            let shift = r.degree() - db;
            let lr = r.lead().clone();
            for a in q.0.iter_mut() {
                *a = a.mul(&lb);
            }
            q.0[shift] = q.0[shift].add(&lr);
            let mut nr: Vec<UniPoly> = r.0.iter().map(|a| a.mul(&lb)).collect();
            for (i, bi) in b.0.iter().enumerate() {
                nr[shift + i] = nr[shift + i].sub(&lr.mul(bi));
            }
            nr.pop();
            if nr.is_empty() {
                nr.push(zero.clone());
            }
            r = XPoly(nr).trim();
        }
        (q.trim(), r)
    }

    pub fn gcd(&self, other: &XPoly) -> XPoly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == 0 {
                return XPoly(vec![UniPoly::constant(b.0[0].field().one(), 'y')]);
            }
            let (_, r) = a.pseudo_divrem(&b);
            a = b;
            b = r.primitive();
        }
        a
    }

    /// Primitive part of the exact quotient self / b (up to K[y] factors).
    pub fn div_prim(&self, b: &XPoly) -> XPoly {
        let (q, r) = self.pseudo_divrem(b);
        debug_assert!(r.is_zero(), "inexact pseudo-division");
        q.primitive()
    }

    pub fn deriv_x(&self) -> XPoly {
        let field = self.0[0].field().clone();
        if self.0.len() == 1 {
            return XPoly(vec![UniPoly::zero(&field, 'y')]);
        }
        XPoly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&field.int(k as i64)))
                .collect(),
        )
    }

    pub fn x_degree(&self) -> usize {
        self.degree()
    }
}

/// Square-free decomposition in x over K(y) (Musser): primitive factors with
/// multiplicities, their product equal to `p` up to a factor in K[y].
pub fn squarefree_in_x(p: &BiPoly) -> Vec<(BiPoly, usize)> {
    let field = p.field().clone();
    if p.x_degree() > 0 && squarefree_at_some_y(p) {
        return vec![(p.clone(), 1)];
    }
    let a = XPoly::from_bipoly(p).primitive();
    if a.x_degree() == 0 {
        return vec![];
    }
    let mut c = a.gcd(&a.deriv_x());
    let mut w = a.div_prim(&c);
    let mut out = Vec::new();
    let mut i = 1;
    while w.x_degree() > 0 {
        let y = w.gcd(&c);
        let factor = w.div_prim(&y);
        if factor.x_degree() > 0 {
            out.push((factor.to_bipoly(&field), i));
        }
        c = c.div_prim(&y);
        w = y;
        i += 1;
    }
    out
}

/// Sufficient test: p(x, y0) keeps its x-degree and is square-free for a small integer y0.
fn squarefree_at_some_y(p: &BiPoly) -> bool {
    let field = p.field();
    let d = p.x_degree();
    (1..=8).any(|y0| {
        let y0 = field.int(y0);
        let coeffs: Vec<CycloRational> = (0..=d).map(|i| p.x_coefficient(i).eval(&y0)).collect();
        if coeffs[d as usize].is_zero() {
            return false;
        }
        let q = UniPoly::new(field, coeffs, 'x');
        q.gcd(&q.derivative()).is_constant()
    })
}

/// Greatest common divisor in x over K(y), primitive.
pub fn gcd_in_x(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let field = a.field().clone();
    XPoly::from_bipoly(a).gcd(&XPoly::from_bipoly(b)).to_bipoly(&field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::cyclo::CycloField;

    fn xy(k: &Field) -> (BiPoly, BiPoly) {
        (BiPoly::x(k), BiPoly::y(k))
    }

    #[test]
    fn derivative_and_display() {
        let k = CycloField::new(4);
        let (x, y) = xy(&k);
        let f = x.pow(3).sub(&y.pow(4));
        assert_eq!(f.to_string(), "x^3 - y^4");
        assert_eq!(f.deriv_x().to_string(), "3*x^2");
        assert_eq!(f.deriv_y().to_string(), "-4*y^3");
        assert_eq!(f.x_order_at_origin(), 3);
    }

    #[test]
    fn squarefree_split() {
        let k = CycloField::new(4);
        let (x, y) = xy(&k);
        let xmy = x.sub(&y);
        let f = xmy.pow(2).mul(&x);
        let parts = squarefree_in_x(&f);
        assert_eq!(parts.len(), 2);
        assert!(parts[0].0.is_associate(&x) && parts[0].1 == 1);
        assert!(parts[1].0.is_associate(&xmy) && parts[1].1 == 2);
        let g = x.pow(2).sub(&y.pow(2));
        let parts = squarefree_in_x(&g.pow(2));
        assert_eq!(parts.len(), 1);
        assert!(parts[0].0.is_associate(&g) && parts[0].1 == 2);
    }

    #[test]
    fn compose_shear() {
        let k = CycloField::new(4);
        let (x, y) = xy(&k);
        let f = y.pow(2);
        let g = f.compose(&x, &y.add(&x.scale(&k.int(2)))).unwrap();
        assert_eq!(g, y.add(&x.scale(&k.int(2))).pow(2));
    }
}
