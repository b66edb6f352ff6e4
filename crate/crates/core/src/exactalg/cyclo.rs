//! The cyclotomic field Q(zeta_N) in the power basis of zeta_N.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1);
    // x^n - 1
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let den = cyclotomic_polynomial(d);
            num = div_exact_monic(&num, &den);
        }
    }
    num
}

fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qlen = rem.len() - dd;
    let mut quot = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(|r| r.is_zero()));
    quot
}

pub fn euler_phi(n: u32) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct CycloField {
    n: u32,
    modulus: Vec<BigInt>,
}

pub type Field = Arc<CycloField>;

impl CycloField {
    pub fn new(n: u32) -> Field {
        let n = n.max(1);
        Arc::new(CycloField {
            n,
            modulus: cyclotomic_polynomial(n),
        })
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// Degree of the field over Q.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }
}

pub trait FieldExt {
    fn zero(&self) -> CycloRational;
    fn one(&self) -> CycloRational;
    fn zeta(&self) -> CycloRational;
    fn int(&self, v: i64) -> CycloRational;
    fn rational(&self, v: BigRational) -> CycloRational;
    fn frac(&self, num: i64, den: i64) -> CycloRational;
    /// A primitive d-th root of unity, available when d divides N.
    fn root_of_unity(&self, d: u32) -> Result<CycloRational>;
}

impl FieldExt for Field {
    fn zero(&self) -> CycloRational {
        CycloRational {
            field: self.clone(),
            coords: vec![BigRational::zero(); self.degree()],
        }
    }
    fn one(&self) -> CycloRational {
        self.int(1)
    }
    fn zeta(&self) -> CycloRational {
        let mut z = self.zero();
        if self.degree() == 1 {
            // N = 1 or 2: zeta is rational
            z.coords[0] = BigRational::from_integer(-self.modulus[0].clone());
        } else {
            z.coords[1] = BigRational::one();
        }
        z
    }
    fn int(&self, v: i64) -> CycloRational {
        self.rational(BigRational::from_integer(BigInt::from(v)))
    }
    fn rational(&self, v: BigRational) -> CycloRational {
        let mut z = self.zero();
        z.coords[0] = v;
        z
    }
    fn frac(&self, num: i64, den: i64) -> CycloRational {
        self.rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
    fn root_of_unity(&self, d: u32) -> Result<CycloRational> {
        if d == 0 || !self.n.is_multiple_of(d) {
            return Err(Error::FieldTooSmall(format!(
                "primitive {d}-th root of unity is not in Q(zeta_{})",
                self.n
            )));
        }
        Ok(self.zeta().pow((self.n / d) as u64))
    }
}

/// An element of Q(zeta_N), stored as coordinates in the power basis.
#[derive(Clone)]
pub struct CycloRational {
    field: Field,
    coords: Vec<BigRational>,
}

impl CycloRational {
    pub fn from_coords(field: &Field, coords: Vec<BigRational>) -> Self {
        let mut c = coords;
        let mut out = CycloRational {
            field: field.clone(),
            coords: Vec::new(),
        };
        if c.len() < field.degree() {
            c.resize(field.degree(), BigRational::zero());
        }
        out.coords = reduce(field, c);
        out
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coords[0].clone())
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(self.field.n, other.field.n, "mixing elements of different cyclotomic fields");
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(self.field.rational(r.recip()));
        }
        let modulus: Vec<BigRational> = self.field.modulus.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let inv = qpoly::inverse_mod(&self.coords, &modulus);
        Ok(CycloRational::from_coords(&self.field, inv))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn pow_i(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Image under the embedding Q(zeta_n) -> Q(zeta_M), zeta_n -> zeta_M^(M/n).
    pub fn embed(&self, target: &Field) -> Result<Self> {
        if !target.n.is_multiple_of(self.field.n) {
            return Err(Error::FieldTooSmall(format!(
                "cannot embed Q(zeta_{}) into Q(zeta_{})",
                self.field.n, target.n
            )));
        }
        let image = target.root_of_unity(self.field.n)?;
        let mut acc = target.zero();
        let mut power = target.one();
        for c in &self.coords {
            if !c.is_zero() {
                acc += &power * &target.rational(c.clone());
            }
            power = &power * &image;
        }
        Ok(acc)
    }

    /// Least common multiple of the coordinate denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

fn reduce(field: &CycloField, mut c: Vec<BigRational>) -> Vec<BigRational> {
    let phi = field.degree();
    let m = &field.modulus;
    for k in (phi..c.len()).rev() {
        if c[k].is_zero() {
            continue;
        }
        let lead = std::mem::replace(&mut c[k], BigRational::zero());
        for i in 0..phi {
            if !m[i].is_zero() {
                c[k - phi + i] -= &lead * BigRational::from_integer(m[i].clone());
            }
        }
    }
    c.truncate(phi);
    c
}

pub(crate) mod qpoly {
    //! Dense polynomials over Q, lowest degree first, used for field inversion.
    use num_rational::BigRational;
    use num_traits::Zero;

    fn trim(p: &mut Vec<BigRational>) {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    }

    fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        if r.len() < b.len() {
            return (vec![], r);
        }
        let mut q = vec![BigRational::zero(); r.len() - db];
        let lead_inv = b[db].recip();
        for k in (0..q.len()).rev() {
            let c = &r[k + db] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (i, bi) in b.iter().enumerate() {
                r[k + i] -= &c * bi;
            }
            q[k] = c;
        }
        trim(&mut r);
        (q, r)
    }

    fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let n = a.len().max(b.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, x) in a.iter().enumerate() {
            out[i] += x;
        }
        for (i, y) in b.iter().enumerate() {
            out[i] -= y;
        }
        trim(&mut out);
        out
    }

    /// Inverse of `a` modulo the irreducible `m`.
    pub fn inverse_mod(a: &[BigRational], m: &[BigRational]) -> Vec<BigRational> {
        let mut r0 = m.to_vec();
        let mut r1 = a.to_vec();
        trim(&mut r1);
        let mut s0: Vec<BigRational> = vec![];
        let mut s1: Vec<BigRational> = vec![BigRational::from_integer(1.into())];
        while r1.len() > 1 {
            let (q, r) = divrem(&r0, &r1);
            let s2 = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        let c = r1[0].recip();
        let mut out: Vec<BigRational> = s1.into_iter().map(|x| x * &c).collect();
        let (_, rem) = divrem(&out, m);
        out = rem;
        out
    }
}

impl PartialEq for CycloRational {
    fn eq(&self, other: &Self) -> bool {
        self.field.n == other.field.n && self.coords == other.coords
    }
}
impl Eq for CycloRational {}

impl Hash for CycloRational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.n.hash(state);
        self.coords.hash(state);
    }
}

impl PartialOrd for CycloRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on power-basis coordinates; used only for canonical ordering.
impl Ord for CycloRational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field.n.cmp(&other.field.n).then_with(|| self.coords.cmp(&other.coords))
    }
}

impl<'a> Add<&'a CycloRational> for &'a CycloRational {
    type Output = CycloRational;
    fn add(self, rhs: &CycloRational) -> CycloRational {
        self.same_field(rhs);
        CycloRational {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a CycloRational> for &'a CycloRational {
    type Output = CycloRational;
    fn sub(self, rhs: &CycloRational) -> CycloRational {
        self.same_field(rhs);
        CycloRational {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a CycloRational> for &'a CycloRational {
    type Output = CycloRational;
    fn mul(self, rhs: &CycloRational) -> CycloRational {
        self.same_field(rhs);
        if let Some(r) = rhs.as_rational() {
            return self.scale(&r);
        }
        if let Some(r) = self.as_rational() {
            return rhs.scale(&r);
        }
        let phi = self.field.degree();
        let mut prod = vec![BigRational::zero(); 2 * phi - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        CycloRational {
            field: self.field.clone(),
            coords: reduce(&self.field, prod),
        }
    }
}

impl CycloRational {
    pub fn scale(&self, r: &BigRational) -> CycloRational {
        CycloRational {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }
}

impl<'a> Div<&'a CycloRational> for &'a CycloRational {
    type Output = CycloRational;
    /// Panics on a zero divisor; use [`CycloRational::checked_div`] to get an error instead.
    fn div(self, rhs: &CycloRational) -> CycloRational {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &CycloRational {
    type Output = CycloRational;
    fn neg(self) -> CycloRational {
        CycloRational {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycloRational {
    type Output = CycloRational;
    fn neg(self) -> CycloRational {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycloRational> for CycloRational {
            type Output = CycloRational;
            fn $m(self, rhs: CycloRational) -> CycloRational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycloRational> for CycloRational {
            type Output = CycloRational;
            fn $m(self, rhs: &CycloRational) -> CycloRational {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&CycloRational> for CycloRational {
    fn add_assign(&mut self, rhs: &CycloRational) {
        self.same_field(rhs);
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a += b;
        }
    }
}

impl AddAssign<CycloRational> for CycloRational {
    fn add_assign(&mut self, rhs: CycloRational) {
        *self += &rhs;
    }
}

impl SubAssign<CycloRational> for CycloRational {
    fn sub_assign(&mut self, rhs: CycloRational) {
        *self -= &rhs;
    }
}

impl SubAssign<&CycloRational> for CycloRational {
    fn sub_assign(&mut self, rhs: &CycloRational) {
        self.same_field(rhs);
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a -= b;
        }
    }
}

impl MulAssign<&CycloRational> for CycloRational {
    fn mul_assign(&mut self, rhs: &CycloRational) {
        *self = &*self * rhs;
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl CycloRational {
    /// True when the rendering is a single signed term (no parentheses needed as a factor).
    pub fn is_monomial(&self) -> bool {
        self.coords.iter().filter(|c| !c.is_zero()).count() <= 1
    }
}

impl fmt::Display for CycloRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let zeta = match k {
                0 => String::new(),
                1 => "zeta".to_string(),
                _ => format!("zeta^{k}"),
            };
            if k == 0 {
                out.push_str(&fmt_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&zeta);
            } else {
                out.push_str(&format!("{}*{}", fmt_rational(&abs), zeta));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for CycloRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [Q(zeta_{})]", self, self.field.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        let show = |n| cyclotomic_polynomial(n).iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        assert_eq!(show(1), "-1,1");
        assert_eq!(show(3), "1,1,1");
        assert_eq!(show(4), "1,0,1");
        assert_eq!(show(12), "1,0,-1,0,1");
        assert_eq!(euler_phi(12), 4);
    }

    #[test]
    fn gaussian_product() {
        let k = CycloField::new(4);
        let one = k.one();
        let i = k.zeta();
        assert_eq!(&(&one + &i) * &(&one - &i), k.int(2));
    }

    #[test]
    fn cube_root_square() {
        let k = CycloField::new(3);
        let z = k.zeta();
        assert_eq!(&z * &z, &(-k.one()) - &z);
    }

    #[test]
    fn division_by_zero() {
        let k = CycloField::new(4);
        assert_eq!(k.frac(5, 3).checked_div(&k.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn inverse_and_embedding() {
        let k = CycloField::new(12);
        let a = &k.int(2) + &k.zeta().pow(5);
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
        let k3 = CycloField::new(3);
        let w = k3.zeta().embed(&k).unwrap();
        assert!(w.pow(3).is_one() && !w.is_one());
        assert!(k.zeta().embed(&CycloField::new(8)).is_err());
    }

    #[test]
    fn rendering() {
        let k = CycloField::new(4);
        assert_eq!(k.frac(-3, 2).to_string(), "-3/2");
        assert_eq!((&k.one() - &k.zeta()).to_string(), "1 - zeta");
        assert_eq!(k.zero().to_string(), "0");
    }
}
