//! Coefficient fields for the representation oracles: the rationals and
//! the finite fields `GF(p^k)` with small order.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn reduce_i64(&self, k: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn reduce_i64(&self, k: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(k))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

/// `(p, k)` with `q = p^k`, `p` prime, or `None`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// The prime powers `2, 3, 4, 5, 7, 8, 9, 11, ...` in increasing order.
pub fn prime_powers() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&q| prime_power(q).is_some())
}

/// `GF(q)` with elements `0..q`, read as polynomials over `GF(p)` in base
/// `p` and multiplied modulo a fixed irreducible polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisField {
    p: u16,
    q: u16,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// Largest field order supported (elements are stored as bytes).
pub const MAX_FIELD_ORDER: u64 = 128;

impl GaloisField {
    pub fn new(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q)
            .ok_or_else(|| Error::InvalidInput(format!("{q} is not a prime power")))?;
        if q > MAX_FIELD_ORDER {
            return Err(Error::BoundExceeded { what: "field order", value: q as usize, bound: MAX_FIELD_ORDER as usize });
        }
        let (p, k, qs) = (p as usize, k as usize, q as usize);
        let modulus = irreducible(p, k);
        let digits = |x: usize| -> Vec<usize> { (0..k).map(|t| x / p.pow(t as u32) % p).collect() };
        let number = |ds: &[usize]| -> usize { ds.iter().rev().fold(0, |acc, &d| acc * p + d) };

        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..qs {
            let da = digits(a);
            for b in 0..qs {
                let db = digits(b);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * qs + b] = number(&sum) as u8;
                mul[a * qs + b] = number(&poly_mul_mod(&da, &db, &modulus, p)) as u8;
            }
        }
        let neg = (0..qs).map(|a| (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u8).collect();
        let inv = (0..qs)
            .map(|a| if a == 0 { 0 } else { (1..qs).find(|&b| mul[a * qs + b] == 1).unwrap() as u8 })
            .collect();
        Ok(GaloisField { p: p as u16, q: q as u16, add, mul, neg, inv })
    }

    pub fn order(&self) -> u64 {
        self.q as u64
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.q as u8
    }

    /// Nonzero elements, in a fixed order.
    pub fn units(&self) -> impl Iterator<Item = u8> {
        1..self.q as u8
    }
}

/// Multiply two polynomials given by coefficient lists (lowest degree
/// first) over `GF(p)` and reduce modulo the monic `modulus`.
fn poly_mul_mod(a: &[usize], b: &[usize], modulus: &[usize], p: usize) -> Vec<usize> {
    let k = modulus.len() - 1;
    let mut prod = vec![0usize; a.len() + b.len()];
    for (s, &x) in a.iter().enumerate() {
        for (t, &y) in b.iter().enumerate() {
            prod[s + t] = (prod[s + t] + x * y) % p;
        }
    }
    for deg in (k..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        for (t, &m) in modulus.iter().enumerate() {
            let idx = deg - k + t;
            prod[idx] = (prod[idx] + p * p - c * m % p) % p;
        }
    }
    prod.truncate(k);
    prod.resize(k, 0);
    prod
}

/// The first monic irreducible polynomial of degree `k` over `GF(p)`,
/// found by trial division.
fn irreducible(p: usize, k: usize) -> Vec<usize> {
    if k == 1 {
        return vec![0, 1];
    }
    let monic = |code: usize, deg: usize| -> Vec<usize> {
        let mut c: Vec<usize> = (0..deg).map(|t| code / p.pow(t as u32) % p).collect();
        c.push(1);
        c
    };
    'candidates: for code in 0..p.pow(k as u32) {
        let f = monic(code, k);
        for deg in 1..=k / 2 {
            for g_code in 0..p.pow(deg as u32) {
                if poly_rem(&f, &monic(g_code, deg), p).iter().all(|&c| c == 0) {
                    continue 'candidates;
                }
            }
        }
        return f;
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Remainder of `f` by the monic polynomial `g` over `GF(p)`.
fn poly_rem(f: &[usize], g: &[usize], p: usize) -> Vec<usize> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        for (t, &gc) in g.iter().enumerate() {
            r[shift + t] = (r[shift + t] + p * p - c * gc % p) % p;
        }
        r.pop();
    }
    r
}

impl Field for GaloisField {
    type Elem = u8;

    fn zero(&self) -> u8 {
        0
    }
    fn one(&self) -> u8 {
        1
    }
    fn reduce_i64(&self, k: i64) -> u8 {
        let p = self.p as i64;
        let r = k.rem_euclid(p) as u8;
        // the prime subfield is spanned by 1, and the integer r is 1+...+1
        let mut acc = 0u8;
        for _ in 0..r {
            acc = self.add(&acc, &1);
        }
        acc
    }
    fn add(&self, a: &u8, b: &u8) -> u8 {
        self.add[*a as usize * self.q as usize + *b as usize]
    }
    fn neg(&self, a: &u8) -> u8 {
        self.neg[*a as usize]
    }
    fn mul(&self, a: &u8, b: &u8) -> u8 {
        self.mul[*a as usize * self.q as usize + *b as usize]
    }
    fn inv(&self, a: &u8) -> u8 {
        assert!(*a != 0, "inverse of zero");
        self.inv[*a as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(4), Some((2, 2)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        let first: Vec<u64> = prime_powers().take(9).collect();
        assert_eq!(first, vec![2, 3, 4, 5, 7, 8, 9, 11, 13]);
    }

    #[test]
    fn field_axioms_small_orders() {
        for q in [2u64, 3, 4, 5, 8, 9] {
            let f = GaloisField::new(q).unwrap();
            let els: Vec<u8> = f.elements().collect();
            for a in &els {
                assert_eq!(f.add(a, &f.neg(a)), 0);
                if *a != 0 {
                    assert_eq!(f.mul(a, &f.inv(a)), 1);
                }
                for b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in &els {
                        assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
                        assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn characteristic_and_embedding() {
        let f = GaloisField::new(4).unwrap();
        assert_eq!(f.characteristic(), 2);
        assert_eq!(f.reduce_i64(2), 0);
        assert_eq!(f.reduce_i64(-1), 1);
        let g = GaloisField::new(3).unwrap();
        assert_eq!(g.reduce_i64(-1), 2);
        assert!(GaloisField::new(6).is_err());
    }

    #[test]
    fn rationals_behave() {
        let r = Rationals;
        let half = r.inv(&r.reduce_i64(2));
        assert_eq!(r.add(&half, &half), r.one());
        assert!(r.is_zero(&r.sub(&half, &half)));
    }
}
