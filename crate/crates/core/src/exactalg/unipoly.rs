//! Univariate polynomials over Q(zeta_N).

use std::fmt;

use crate::error::{Error, Result};

use super::cyclo::{CycloRational, Field, FieldExt};
use super::modroots;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<CycloRational>,
    var: char,
}

impl UniPoly {
    pub fn new(field: &Field, mut coeffs: Vec<CycloRational>, var: char) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly {
            field: field.clone(),
            coeffs,
            var,
        }
    }

    pub fn zero(field: &Field, var: char) -> Self {
        Self::new(field, vec![], var)
    }

    pub fn constant(c: CycloRational, var: char) -> Self {
        let field = c.field().clone();
        Self::new(&field, vec![c], var)
    }

    /// `var - root`
    pub fn linear(root: &CycloRational, var: char) -> Self {
        let field = root.field().clone();
        Self::new(&field, vec![-root, field.one()], var)
    }

    pub fn monomial(c: CycloRational, deg: usize, var: char) -> Self {
        let field = c.field().clone();
        let mut coeffs = vec![field.zero(); deg];
        coeffs.push(c);
        Self::new(&field, coeffs, var)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn with_var(mut self, var: char) -> Self {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[CycloRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> CycloRational {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> CycloRational {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn eval(&self, z: &CycloRational) -> CycloRational {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + c;
        }
        acc
    }

    pub fn scale(&self, c: &CycloRational) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|a| a * c).collect(), self.var)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().inv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &self.field.int(k as i64))
            .collect();
        Self::new(&self.field, coeffs, self.var)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect();
        Self::new(&self.field, coeffs, self.var)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) - &other.coeff(k)).collect();
        Self::new(&self.field, coeffs, self.var)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field, self.var);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        Self::new(&self.field, out, self.var)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::constant(self.field.one(), self.var);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        if rem.len() <= dd {
            return Ok((Self::zero(&self.field, self.var), self.clone()));
        }
        let lead_inv = divisor.leading().inv()?;
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &(&c * d);
            }
            quot[k] = c;
        }
        Ok((Self::new(&self.field, quot, self.var), Self::new(&self.field, rem, self.var)))
    }

    /// Quotient of a division known to be exact.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::InternalInconsistency(format!("inexact division of {self} by {divisor}")));
        }
        Ok(q)
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Multiplicity of `root` as a zero of `self` (self nonzero).
    pub fn root_multiplicity(&self, root: &CycloRational) -> usize {
        let lin = Self::linear(root, self.var);
        let mut p = self.clone();
        let mut k = 0;
        while !p.is_zero() {
            let (q, r) = p.div_rem(&lin).expect("linear divisor");
            if !r.is_zero() {
                break;
            }
            p = q;
            k += 1;
        }
        k
    }

    /// Yun's square-free decomposition: pairwise coprime square-free monic
    /// factors with multiplicities; their product equals `self` up to a constant.
    pub fn squarefree_decompose(&self) -> Result<Vec<(UniPoly, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out = Vec::new();
        if self.is_constant() {
            return Ok(out);
        }
        let d = self.derivative();
        let a0 = self.gcd(&d);
        let mut b = self.div_exact(&a0)?;
        let mut c = d.div_exact(&a0)?;
        let mut i = 1;
        loop {
            let dd = c.sub(&b.derivative());
            if b.is_constant() {
                break;
            }
            let a = b.gcd(&dd);
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a)?;
            c = dd.div_exact(&a)?;
            i += 1;
        }
        Ok(out)
    }

    /// Roots lying in the working field, with multiplicities, and the number
    /// of roots (with multiplicity) that lie outside it.
    pub fn roots_in_field(&self) -> Result<(Vec<(CycloRational, usize)>, usize)> {
        let mut roots = Vec::new();
        let mut found = 0;
        for (factor, mult) in self.squarefree_decompose()? {
            for r in modroots::squarefree_roots(&factor) {
                roots.push((r, mult));
                found += mult;
            }
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        Ok((roots, self.degree() - found))
    }

    /// `self` with every known root removed (the part whose roots lie outside the field).
    pub fn strip_roots(&self, roots: &[(CycloRational, usize)]) -> Result<Self> {
        let mut p = self.clone();
        for (r, m) in roots {
            p = p.div_exact(&Self::linear(r, self.var).pow(*m))?;
        }
        Ok(p)
    }

    pub fn embed(&self, target: &Field) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|c| c.embed(target)).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(target, coeffs, self.var))
    }
}

fn wrap(c: &CycloRational) -> String {
    if c.is_monomial() {
        c.to_string()
    } else {
        format!("({c})")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut s = wrap(c);
            let neg = s.starts_with('-');
            if neg {
                s.remove(0);
            }
            let mono = match k {
                0 => String::new(),
                1 => self.var.to_string(),
                _ => format!("{}^{}", self.var, k),
            };
            let body = if k == 0 {
                s
            } else if s == "1" {
                mono
            } else {
                format!("{s}*{mono}")
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
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::cyclo::CycloField;

    fn poly(k: &Field, c: &[i64]) -> UniPoly {
        UniPoly::new(k, c.iter().map(|&v| k.int(v)).collect(), 'z')
    }

    #[test]
    fn squarefree_examples() {
        let k = CycloField::new(4);
        let p = poly(&k, &[-1, 0, 1]);
        assert_eq!(p.squarefree_decompose().unwrap(), vec![(p.clone(), 1)]);
        // (z-1)^2 (z+2)
        let q = poly(&k, &[-1, 1]).pow(2).mul(&poly(&k, &[2, 1]));
        assert_eq!(
            q.squarefree_decompose().unwrap(),
            vec![(poly(&k, &[2, 1]), 1), (poly(&k, &[-1, 1]), 2)]
        );
        let c = poly(&k, &[0, 0, 0, 1]);
        assert_eq!(c.squarefree_decompose().unwrap(), vec![(poly(&k, &[0, 1]), 3)]);
        assert_eq!(UniPoly::zero(&k, 'z').squarefree_decompose(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn roots_examples() {
        let k = CycloField::new(4);
        let (r, u) = poly(&k, &[-1, 0, 1]).roots_in_field().unwrap();
        assert_eq!(r, vec![(k.int(-1), 1), (k.int(1), 1)]);
        assert_eq!(u, 0);
        let (r, u) = poly(&k, &[1, 0, 1]).roots_in_field().unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(u, 0);
        assert!(r.iter().all(|(z, _)| (&(z * z) + &k.one()).is_zero()));
        let (r, u) = poly(&k, &[-2, 0, 1]).roots_in_field().unwrap();
        assert!(r.is_empty());
        assert_eq!(u, 2);
    }

    #[test]
    fn rendering() {
        let k = CycloField::new(4);
        assert_eq!(poly(&k, &[-1, 0, 3]).to_string(), "3*z^2 - 1");
        assert_eq!(poly(&k, &[0, -1]).to_string(), "-z");
    }
}
