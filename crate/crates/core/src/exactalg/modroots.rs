//! Roots of square-free polynomials over Q(zeta_N) by p-adic lifting.
//!
//! A prime p = 1 mod N splits completely, so every embedding zeta -> omega^e
//! sends the polynomial to Z_p[z]. Roots mod p are lifted by Newton iteration,
//! and the power-basis coordinates of a root are recovered from a single
//! embedding by lattice reduction. Every candidate is
//! verified by exact substitution before it is returned.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::cyclo::{CycloRational, Field, FieldExt};
use super::unipoly::UniPoly;

const PRIME_START: u64 = 1 << 15;
const PRIMES_TRIED: usize = 24;

pub fn squarefree_roots(p: &UniPoly) -> Vec<CycloRational> {
    let field = p.field().clone();
    match p.degree() {
        0 => return vec![],
        1 => {
            let r = &(-&p.coeff(0)) / &p.coeff(1);
            return vec![r];
        }
        _ => {}
    }
    let n = field.conductor() as u64;
    let units: Vec<u64> = (1..=n.max(1)).filter(|e| e.gcd(&n) == 1).collect();
    let mut prime = PRIME_START - PRIME_START % n + 1;
    let mut tried = 0;
    while tried < PRIMES_TRIED {
        prime += n;
        if !is_prime(prime) {
            continue;
        }
        tried += 1;
        if let Some(roots) = attempt(p, &field, prime, &units) {
            return roots;
        }
    }
    vec![]
}

/// Monic polynomial with coefficients in Z[zeta] whose roots are `scale` times those of `p`.
fn integral_monic(p: &UniPoly) -> (Vec<CycloRational>, BigInt) {
    let field = p.field();
    let lead = p.coeff(p.degree());
    let monic: Vec<CycloRational> = p.coeffs().iter().map(|c| c / &lead).collect();
    let scale = monic
        .iter()
        .flat_map(|c| c.coords().iter())
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let d = p.degree();
    let coeffs = monic
        .iter()
        .enumerate()
        .map(|(j, c)| c * &field.rational(BigRational::from_integer(scale.pow((d - j) as u32))))
        .collect();
    (coeffs, scale)
}

fn attempt(p: &UniPoly, field: &Field, prime: u64, units: &[u64]) -> Option<Vec<CycloRational>> {
    let (monic, scale) = integral_monic(p);
    let d = p.degree();
    let g = primitive_root(prime);
    let n = field.conductor() as u64;
    let omega = powmod(g, (prime - 1) / n, prime);

    // Roots in the field inject into the roots mod p under every embedding.
    let mut bound = usize::MAX;
    let mut candidates = Vec::new();
    for &e in units {
        let img = image_mod_p(&monic, powmod(omega, e, prime), prime);
        if img.len() != d + 1 || !fp_squarefree(&img, prime) {
            return None;
        }
        let roots = fp_roots(&img, prime);
        bound = bound.min(roots.len());
        if e == 1 {
            candidates = roots;
        }
    }
    if bound == 0 {
        return Some(vec![]);
    }

    let phi = field.degree();
    let size = monic
        .iter()
        .map(|c| c.coords().iter().map(|q| q.numer().abs()).sum::<BigInt>())
        .max()
        .unwrap_or_else(BigInt::one);
    let coord_bits = phi as u64 + 2 + size.bits();
    let max_bits = (phi as u64 * (phi as u64 / 2 + coord_bits + 16)).clamp(128, 12288);
    let log_p = 64 - prime.leading_zeros() as u64 - 1;
    let cyclo: Vec<BigInt> = field.modulus().to_vec();

    let mut found: Vec<CycloRational> = Vec::new();
    for r in candidates {
        let mut bits = 64u64;
        loop {
            let k = (bits / log_p).max(1) as u32;
            let m = BigInt::from(prime).pow(k);
            let w = hensel(&cyclo, BigInt::from(omega), prime, &m);
            let img = image_mod(&monic, &w, &m);
            let t = hensel(&img, BigInt::from(r), prime, &m);
            if let Some(root) = lift_to_field(field, &w, &t, &m, &scale, p) {
                if !found.contains(&root) {
                    found.push(root);
                }
                break;
            }
            if bits >= max_bits {
                break;
            }
            bits *= 2;
        }
        if found.len() == bound {
            break;
        }
    }
    Some(found)
}

/// The element of Z[zeta] with small coordinates mapping to `t` under zeta -> w mod m,
/// divided by `scale`, if it is a root of `p`.
fn lift_to_field(field: &Field, w: &BigInt, t: &BigInt, m: &BigInt, scale: &BigInt, p: &UniPoly) -> Option<CycloRational> {
    let phi = field.degree();
    let dim = phi + 1;
    let mut basis = vec![vec![BigInt::zero(); dim]; dim];
    basis[0][0] = m.clone();
    let mut pw = BigInt::one();
    for (i, row) in basis.iter_mut().enumerate().take(phi).skip(1) {
        pw = (&pw * w).mod_floor(m);
        row[0] = (-&pw).mod_floor(m);
        row[i] = BigInt::one();
    }
    basis[phi][0] = t.clone();
    basis[phi][phi] = BigInt::one();
    lll(&mut basis);
    for row in &basis {
        let sign = if row[phi].is_one() {
            BigInt::one()
        } else if (-&row[phi]).is_one() {
            -BigInt::one()
        } else {
            continue;
        };
        let coords = row[..phi].iter().map(|c| BigRational::new(c * &sign, scale.clone())).collect();
        let cand = CycloRational::from_coords(field, coords);
        if p.eval(&cand).is_zero() {
            return Some(cand);
        }
    }
    None
}

/// Integral LLL reduction (delta = 3/4) of linearly independent rows.
fn lll(b: &mut [Vec<BigInt>]) {
    let n = b.len();
    if n < 2 {
        return;
    }
    let dot = |u: &[BigInt], v: &[BigInt]| u.iter().zip(v).map(|(x, y)| x * y).sum::<BigInt>();
    // d[i + 1] is the Gram determinant of rows 0..=i; lam[k][j] the scaled Gram-Schmidt coefficients.
    let mut d = vec![BigInt::one(); n + 1];
    let mut lam = vec![vec![BigInt::zero(); n]; n];
    d[1] = dot(&b[0], &b[0]);
    let (mut k, mut kmax) = (1usize, 0usize);

    fn reduce(b: &mut [Vec<BigInt>], lam: &mut [Vec<BigInt>], d: &[BigInt], k: usize, l: usize) {
        let dl = &d[l + 1];
        if (&lam[k][l] * 2u32).abs() <= *dl {
            return;
        }
        let q = (&lam[k][l] * 2u32 + dl).div_floor(&(dl * 2u32));
        let (lo, hi) = b.split_at_mut(k);
        for (x, y) in hi[0].iter_mut().zip(&lo[l]) {
            *x -= &q * y;
        }
        lam[k][l] -= &q * dl;
        let (lo, hi) = lam.split_at_mut(k);
        for (x, y) in hi[0][..l].iter_mut().zip(&lo[l][..l]) {
            *x -= &q * y;
        }
    }

    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = dot(&b[k], &b[j]);
                for i in 0..j {
                    u = (&d[i + 1] * &u - &lam[k][i] * &lam[j][i]) / &d[i];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    d[k + 1] = u;
                }
            }
        }
        loop {
            reduce(b, &mut lam, &d, k, k - 1);
            let lhs = BigInt::from(4) * &d[k + 1] * &d[k - 1];
            let rhs = BigInt::from(3) * &d[k] * &d[k] - BigInt::from(4) * &lam[k][k - 1] * &lam[k][k - 1];
            if lhs < rhs {
                b.swap(k, k - 1);
                for j in 0..k - 1 {
                    let (lo, hi) = lam.split_at_mut(k);
                    std::mem::swap(&mut hi[0][j], &mut lo[k - 1][j]);
                }
                let l = lam[k][k - 1].clone();
                let big_b = (&d[k - 1] * &d[k + 1] + &l * &l) / &d[k];
                for row in lam.iter_mut().take(kmax + 1).skip(k + 1) {
                    let t = row[k].clone();
                    row[k] = (&d[k + 1] * &row[k - 1] - &l * &t) / &d[k];
                    row[k - 1] = (&big_b * &t + &l * &row[k]) / &d[k + 1];
                }
                d[k] = big_b;
                k = (k - 1).max(1);
            } else {
                for l in (0..k - 1).rev() {
                    reduce(b, &mut lam, &d, k, l);
                }
                k += 1;
                break;
            }
        }
    }
}

fn rational_to_mod(q: &BigRational, m: &BigInt) -> BigInt {
    let inv = mod_inverse(q.denom(), m).expect("denominator coprime to modulus");
    (q.numer() * inv).mod_floor(m)
}

fn image_mod(coeffs: &[CycloRational], w: &BigInt, m: &BigInt) -> Vec<BigInt> {
    coeffs
        .iter()
        .map(|c| {
            let mut acc = BigInt::zero();
            let mut pw = BigInt::one();
            for q in c.coords() {
                if !q.is_zero() {
                    acc += rational_to_mod(q, m) * &pw;
                }
                pw = (&pw * w).mod_floor(m);
            }
            acc.mod_floor(m)
        })
        .collect()
}

fn image_mod_p(coeffs: &[CycloRational], w: u64, prime: u64) -> Vec<u64> {
    let m = BigInt::from(prime);
    let mut img: Vec<u64> = image_mod(coeffs, &BigInt::from(w), &m)
        .into_iter()
        .map(|v| v.to_u64().unwrap())
        .collect();
    while img.last() == Some(&0) {
        img.pop();
    }
    img
}

fn eval_mod(poly: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in poly.iter().rev() {
        acc = (acc * x + c).mod_floor(m);
    }
    acc
}

fn derivative(poly: &[BigInt]) -> Vec<BigInt> {
    poly.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect()
}

/// Newton lift of a simple root mod p to a root mod `m` (a power of p).
fn hensel(poly: &[BigInt], root: BigInt, prime: u64, m: &BigInt) -> BigInt {
    let dpoly = derivative(poly);
    let mut x = root;
    let mut cur = BigInt::from(prime);
    while &cur < m {
        cur = (&cur * &cur).min(m.clone());
        let fx = eval_mod(poly, &x, &cur);
        let dfx = eval_mod(&dpoly, &x, &cur);
        let inv = mod_inverse(&dfx, &cur).expect("simple root");
        x = (x - fx * inv).mod_floor(&cur);
    }
    x
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&q| powmod(g, (p - 1) / q, p) != 1))
        .expect("prime has a primitive root")
}

fn fp_eval(poly: &[u64], x: u64, p: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| (mulmod(acc, x, p) + c) % p)
}

fn fp_roots(poly: &[u64], p: u64) -> Vec<u64> {
    let deg = poly.len() - 1;
    let mut out = Vec::new();
    for x in 0..p {
        if fp_eval(poly, x, p) == 0 {
            out.push(x);
            if out.len() == deg {
                break;
            }
        }
    }
    out
}

fn fp_trim(p: &mut Vec<u64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn fp_squarefree(poly: &[u64], p: u64) -> bool {
    let mut a = poly.to_vec();
    let mut b: Vec<u64> = poly.iter().enumerate().skip(1).map(|(k, &c)| mulmod(c, k as u64 % p, p)).collect();
    fp_trim(&mut b);
    if b.is_empty() {
        return false;
    }
    while !b.is_empty() {
        let inv = powmod(*b.last().unwrap(), p - 2, p);
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let c = mulmod(*a.last().unwrap(), inv, p);
            for (i, &bi) in b.iter().enumerate() {
                a[shift + i] = (a[shift + i] + p - mulmod(c, bi, p)) % p;
            }
            fp_trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::cyclo::CycloField;

    #[test]
    fn roots_with_zeta_coordinates() {
        let k = CycloField::new(12);
        let a = &k.frac(3, 2) - &k.zeta().pow(3);
        let b = &k.zeta() + &k.int(-2);
        let c = k.frac(-5, 7);
        let mut p = UniPoly::constant(k.int(3), 'z');
        for r in [&a, &b, &c] {
            p = p.mul(&UniPoly::linear(r, 'z'));
        }
        // an irreducible quadratic factor with no roots in the field
        p = p.mul(&UniPoly::new(&k, vec![k.int(-2), k.zero(), k.zero(), k.one()], 'z'));
        let mut roots = squarefree_roots(&p);
        roots.sort();
        let mut want = vec![a, b, c];
        want.sort();
        assert_eq!(roots, want);
    }

    #[test]
    fn rational_field() {
        let k = CycloField::new(1);
        let p = UniPoly::new(&k, vec![k.int(-6), k.int(1), k.int(1)], 'z');
        let mut roots = squarefree_roots(&p);
        roots.sort();
        assert_eq!(roots, vec![k.int(-3), k.int(2)]);
    }
}
