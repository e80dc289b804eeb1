//! Sparse Laurent polynomials in `v` with integer coefficients, and
//! quotients of them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::monomial(1, 0)
    }

    pub fn constant(c: i64) -> LaurentPoly {
        LaurentPoly::monomial(c, 0)
    }

    /// `c v^e`.
    pub fn monomial(c: i64, e: i64) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        p.add_term(e, c);
        p
    }

    /// `v^e`.
    pub fn v_pow(e: i64) -> LaurentPoly {
        LaurentPoly::monomial(1, e)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(e).or_insert(0);
        *slot = slot.checked_add(c).expect("Laurent coefficient overflow");
        if *slot == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i64) -> i64 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    /// Nonzero terms `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect() }
    }

    pub fn scale(&self, k: i64) -> LaurentPoly {
        if k == 0 {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(&e, &c)| (e, c.checked_mul(k).expect("Laurent coefficient overflow")))
                .collect(),
        }
    }

    /// The substitution `v -> v^{-1}`.
    pub fn bar(&self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect() }
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    /// True if every exponent is at least `k`.
    pub fn valuation_at_least(&self, k: i64) -> bool {
        self.min_exp().is_none_or(|e| e >= k)
    }

    /// Every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|&c| c >= 0)
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// The unique bar-symmetric `g` with `self - g` in `v Z[v]`:
    /// `g = c_0 + sum_{k>0} c_{-k} (v^k + v^{-k})`.
    pub fn bar_symmetric_part(&self) -> LaurentPoly {
        let mut g = LaurentPoly::zero();
        for (e, c) in self.terms() {
            if e > 0 {
                break;
            }
            g.add_term(e, c);
            if e < 0 {
                g.add_term(-e, c);
            }
        }
        g
    }

    /// Exact quotient by a nonzero divisor, or `None` if the division leaves
    /// a remainder.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        assert!(!divisor.is_zero(), "division by zero Laurent polynomial");
        let (dlo, dhi) = (divisor.min_exp()?, divisor.max_exp()?);
        let lead = divisor.coeff(dhi);
        let mut rem = self.clone();
        let mut quotient = LaurentPoly::zero();
        while let Some(top) = rem.max_exp() {
            let lo = rem.min_exp().expect("nonzero");
            if top - lo < dhi - dlo {
                return None;
            }
            let c = rem.coeff(top);
            if c % lead != 0 {
                return None;
            }
            let q = LaurentPoly::monomial(c / lead, top - dhi);
            rem = &rem - &(&q * divisor);
            quotient += &q;
        }
        Some(quotient)
    }

    /// Evaluate at an integer (nonnegative exponents only), or at `1/x` for
    /// nonpositive ones; returns `None` when the polynomial needs both.
    pub fn eval_i128(&self, x: i128) -> Option<i128> {
        if !self.valuation_at_least(0) {
            return None;
        }
        let mut acc: i128 = 0;
        for (e, c) in self.terms() {
            acc = acc.checked_add((c as i128).checked_mul(x.checked_pow(e as u32)?)?)?;
        }
        Some(acc)
    }

    /// If `self = F(v^{-2})` for a polynomial `F`, returns `F`'s
    /// coefficients (constant term first).
    pub fn as_poly_in_v_minus_two(&self) -> Option<Vec<i64>> {
        let mut out = Vec::new();
        for (e, c) in self.terms() {
            if e > 0 || e % 2 != 0 {
                return None;
            }
            let k = (-e / 2) as usize;
            if out.len() <= k {
                out.resize(k + 1, 0);
            }
            out[k] = c;
        }
        Some(out)
    }

    /// Text form with descending exponents, e.g. `v^2 + 1 + v^-2`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// JSON form: map from exponent (as string) to coefficient.
    pub fn to_json(&self) -> serde_json::Value {
        let map: BTreeMap<String, i64> = self.terms().map(|(e, c)| (e.to_string(), c)).collect();
        serde_json::to_value(map).expect("serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<LaurentPoly> {
        if let Some(c) = value.as_i64() {
            return Ok(LaurentPoly::constant(c));
        }
        let map: BTreeMap<String, i64> = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidInput(format!("bad Laurent polynomial JSON: {e}")))?;
        let mut p = LaurentPoly::zero();
        for (e, c) in map {
            let e: i64 = e
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad exponent {e:?}")))?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        LaurentPoly::from_json(&v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms().rev().enumerate() {
            let (sign, abs) = if c < 0 { ("-", -c) } else { ("+", c) };
            if idx == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (e, abs) {
                (0, a) => write!(f, "{a}")?,
                (1, 1) => write!(f, "v")?,
                (1, a) => write!(f, "{a}v")?,
                (e, 1) => write!(f, "v^{e}")?,
                (e, a) => write!(f, "{a}v^{e}")?,
            }
        }
        Ok(())
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c);
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(e, -c);
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                let e = e1.checked_add(e2).expect("Laurent exponent overflow");
                out.add_term(e, c1.checked_mul(c2).expect("Laurent coefficient overflow"));
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// The quantum integer `[a] = (v^a - v^{-a}) / (v - v^{-1})`.
pub fn gauss_int(a: i64) -> LaurentPoly {
    if a < 0 {
        return -&gauss_int(-a);
    }
    LaurentPoly::from_terms((0..a).map(|k| (a - 1 - 2 * k, 1)))
}

/// `[a]! = [a][a-1]...[1]`, with `[0]! = 1`.
pub fn gauss_factorial(a: u32) -> LaurentPoly {
    (1..=a as i64).fold(LaurentPoly::one(), |acc, k| &acc * &gauss_int(k))
}

/// A quotient of Laurent polynomials. Equality is decided by
/// cross-multiplication; nothing is ever reduced through a gcd.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<RationalFunction> {
        if den.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Ok(RationalFunction { num, den }.normalized())
    }

    pub fn zero() -> RationalFunction {
        RationalFunction { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn from_poly(p: LaurentPoly) -> RationalFunction {
        RationalFunction { num: p, den: LaurentPoly::one() }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Divides the denominator out exactly when possible.
    pub fn as_laurent(&self) -> Option<LaurentPoly> {
        self.num.div_exact(&self.den)
    }

    fn normalized(self) -> RationalFunction {
        if self.num.is_zero() {
            return RationalFunction::zero();
        }
        if let Some(q) = self.num.div_exact(&self.den) {
            return RationalFunction::from_poly(q);
        }
        // Move the denominator's lowest power of v into the numerator so
        // that monomial factors do not pile up.
        let shift = self.den.min_exp().unwrap_or(0);
        RationalFunction { num: self.num.shift(-shift), den: self.den.shift(-shift) }
    }

    pub fn mul(&self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction { num: &self.num * &rhs.num, den: &self.den * &rhs.den }.normalized()
    }

    pub fn div(&self, rhs: &RationalFunction) -> Result<RationalFunction> {
        if rhs.is_zero() {
            return Err(Error::InvalidInput("division by zero rational function".into()));
        }
        Ok(RationalFunction { num: &self.num * &rhs.den, den: &self.den * &rhs.num }.normalized())
    }

    pub fn add(&self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction { num: &self.num + &rhs.num, den: self.den.clone() }
                .normalized();
        }
        RationalFunction {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
        .normalized()
    }

    pub fn scale(&self, p: &LaurentPoly) -> RationalFunction {
        RationalFunction { num: &self.num * p, den: self.den.clone() }.normalized()
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalFunction {}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == LaurentPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(e: i64) -> LaurentPoly {
        LaurentPoly::v_pow(e)
    }

    #[test]
    fn quantum_integers() {
        assert_eq!(gauss_int(0), LaurentPoly::zero());
        assert_eq!(gauss_int(1), LaurentPoly::one());
        assert_eq!(gauss_int(2), &v(1) + &v(-1));
        assert_eq!(gauss_int(-2), -&gauss_int(2));
        assert_eq!(gauss_factorial(0), LaurentPoly::one());
        let expected = &(&(&v(2) + &LaurentPoly::one()) + &v(-2)) * &(&v(1) + &v(-1));
        assert_eq!(gauss_factorial(3), expected);
    }

    #[test]
    fn display_descending() {
        let p = LaurentPoly::from_terms([(2, 1), (0, 1), (-2, 1)]);
        assert_eq!(p.to_string(), "v^2 + 1 + v^-2");
        assert_eq!(LaurentPoly::from_terms([(1, -1), (-1, 3)]).to_string(), "-v + 3v^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let f3 = gauss_factorial(3);
        let q = f3.div_exact(&gauss_int(3)).unwrap();
        assert_eq!(q, gauss_int(2));
        assert!(gauss_int(3).div_exact(&gauss_int(2)).is_none());
        assert_eq!(v(5).div_exact(&v(2)).unwrap(), v(3));
    }

    #[test]
    fn bar_symmetric_part() {
        let c = LaurentPoly::from_terms([(-2, 3), (-1, 1), (0, 2), (1, 5), (3, 1)]);
        let g = c.bar_symmetric_part();
        assert!(g.is_bar_invariant());
        assert!((&c - &g).valuation_at_least(1));
        assert_eq!(g, LaurentPoly::from_terms([(-2, 3), (-1, 1), (0, 2), (1, 1), (2, 3)]));
    }

    #[test]
    fn poly_in_v_minus_two() {
        let p = LaurentPoly::from_terms([(0, 1), (-2, 1)]);
        assert_eq!(p.as_poly_in_v_minus_two(), Some(vec![1, 1]));
        assert_eq!(v(1).as_poly_in_v_minus_two(), None);
        assert_eq!(v(-3).as_poly_in_v_minus_two(), None);
    }

    #[test]
    fn rational_equality_by_cross_multiplication() {
        let a = RationalFunction::new(v(-1), gauss_int(2)).unwrap();
        let b = RationalFunction::new(LaurentPoly::one(), &v(2) + &LaurentPoly::one()).unwrap();
        assert_eq!(a, b);
        let sum = a.add(&b);
        assert_eq!(sum, RationalFunction::new(LaurentPoly::constant(2), &v(2) + &LaurentPoly::one()).unwrap());
        assert!(RationalFunction::new(LaurentPoly::one(), LaurentPoly::zero()).is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = LaurentPoly::from_terms([(-1, 2), (3, -1)]);
        let j = p.to_json();
        assert_eq!(j, serde_json::json!({"-1": 2, "3": -1}));
        assert_eq!(LaurentPoly::from_json(&j).unwrap(), p);
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-4i64..=4, -5i64..=5), 0..5).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        }

        #[test]
        fn division_inverts_multiplication(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
        }
    }
}
