//! The twisted Hall algebra in its PBW basis `<m>`: the actions of the
//! generators `f_i` and of their adjoints `e'_i`, Kashiwara's scalar
//! product, and Hall products obtained by counting submodules.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::crystal::{minus_move, plus_move};
use crate::enumerate;
use crate::error::{Error, Result};
use crate::field::{prime_powers, GaloisField};
use crate::laurent::{gauss_factorial, gauss_int, LaurentPoly, RationalFunction};
use crate::multisegment::{DegreeVector, Multisegment};
use crate::quiverrep::{endo_dim, orbit_dim, submodule_types, TypeCounts};
use crate::ring::VertexRing;

/// A homogeneous linear combination of PBW basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PBWVector {
    ring: VertexRing,
    degree: DegreeVector,
    terms: BTreeMap<Multisegment, LaurentPoly>,
}

impl PBWVector {
    pub fn zero(ring: VertexRing, degree: DegreeVector) -> Self {
        PBWVector { ring, degree, terms: BTreeMap::new() }
    }

    /// The basis element `<m>`.
    pub fn basis(m: &Multisegment) -> Self {
        let mut v = PBWVector::zero(m.ring(), m.degree());
        v.terms.insert(m.clone(), LaurentPoly::one());
        v
    }

    pub fn ring(&self) -> VertexRing {
        self.ring
    }

    pub fn degree(&self) -> &DegreeVector {
        &self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Multisegment, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Multisegment) -> LaurentPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Add `c <m>`; `m` must have the ring and degree of `self`.
    pub fn add_term(&mut self, m: &Multisegment, c: &LaurentPoly) -> Result<()> {
        if m.ring() != self.ring {
            return Err(Error::RingMismatch(format!("{m} is not over {}", self.ring)));
        }
        if m.degree() != self.degree {
            return Err(Error::DegreeMismatch(format!("{m} does not have degree {}", self.degree)));
        }
        self.add_unchecked(m, c);
        Ok(())
    }

    fn add_unchecked(&mut self, m: &Multisegment, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_default();
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(m);
        }
    }

    pub fn add(&self, other: &PBWVector) -> Result<PBWVector> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() && self.ring == other.ring {
            return Ok(other.clone());
        }
        if self.degree != other.degree || self.ring != other.ring {
            return Err(Error::DegreeMismatch(format!("adding vectors of degrees {} and {}", self.degree, other.degree)));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_unchecked(m, c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &LaurentPoly) -> PBWVector {
        let mut out = PBWVector::zero(self.ring, self.degree.clone());
        for (m, x) in &self.terms {
            out.add_unchecked(m, &(x * c));
        }
        out
    }

    /// Divide every coefficient exactly; `None` if some division leaves a
    /// remainder.
    pub fn div_exact(&self, c: &LaurentPoly) -> Option<PBWVector> {
        let mut out = PBWVector::zero(self.ring, self.degree.clone());
        for (m, x) in &self.terms {
            out.terms.insert(m.clone(), x.div_exact(c)?);
        }
        Some(out)
    }

    /// Apply `g` to every key; the image must be homogeneous.
    pub fn relabel(&self, g: impl Fn(&Multisegment) -> Multisegment) -> Result<PBWVector> {
        let mut out: Option<PBWVector> = None;
        for (m, c) in &self.terms {
            let k = g(m);
            let target = out.get_or_insert_with(|| PBWVector::zero(k.ring(), k.degree()));
            target.add_term(&k, c)?;
        }
        Ok(out.unwrap_or_else(|| self.clone()))
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| json!({"multisegment": m.to_string(), "coefficient": c.to_json()}))
            .collect();
        json!({"ring": self.ring.to_string(), "degree": self.degree.to_string(), "terms": terms})
    }

    /// Reads the `to_json` form; `ring` applies when the document has none.
    pub fn from_json(value: &Value, ring: VertexRing) -> Result<PBWVector> {
        let bad = |what: &str| Error::InvalidInput(format!("PBW vector JSON: {what}"));
        let ring = match value.get("ring").and_then(Value::as_str) {
            Some(r) => r.parse()?,
            None => ring,
        };
        let terms = value.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))?;
        let mut out: Option<PBWVector> = None;
        for t in terms {
            let text = t.get("multisegment").and_then(Value::as_str).ok_or_else(|| bad("term without multisegment"))?;
            let m = Multisegment::parse(text, ring)?;
            let c = LaurentPoly::from_json(t.get("coefficient").ok_or_else(|| bad("term without coefficient"))?)?;
            out.get_or_insert_with(|| PBWVector::zero(ring, m.degree())).add_term(&m, &c)?;
        }
        Ok(out.unwrap_or_else(|| PBWVector::zero(ring, DegreeVector::zero())))
    }
}

impl fmt::Display for PBWVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if *c == LaurentPoly::one() {
                    format!("<{m}>")
                } else if c.terms().count() == 1 {
                    format!("{c}<{m}>")
                } else {
                    format!("({c})<{m}>")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `sum_{k > l} (m_{(k-1;i-1]} - m_{(k;i]})`.
fn tail_exponent(m: &Multisegment, l: usize, i: i64) -> i64 {
    let ring = m.ring();
    let top = m.max_length() + 1;
    ((l + 1)..=top)
        .map(|k| m.mult_head(k - 1, ring.add(i, -1)) as i64 - m.mult_head(k, i) as i64)
        .sum()
}

/// `f_i <m>` on a basis element.
pub fn f_basis(i: i64, m: &Multisegment) -> PBWVector {
    let ring = m.ring();
    let i = ring.norm(i);
    let mut out = PBWVector::zero(ring, m.degree().plus(&DegreeVector::unit(i)));
    for l in 1..=m.max_length() + 1 {
        if let Some(target) = plus_move(m, l, i) {
            let c = gauss_int(m.mult_head(l, i) as i64 + 1).shift(tail_exponent(m, l, i));
            out.add_unchecked(&target, &c);
        }
    }
    out
}

/// `e'_i <m>` on a basis element.
pub fn e_prime_basis(i: i64, m: &Multisegment) -> PBWVector {
    let ring = m.ring();
    let i = ring.norm(i);
    let mut out = PBWVector::zero(ring, m.degree().minus(&DegreeVector::unit(i)));
    for l in 1..=m.max_length() {
        let k = m.mult_head(l, i);
        let Some(target) = minus_move(m, l, i) else { continue };
        let mut c = LaurentPoly::v_pow(tail_exponent(m, l, i) - k as i64 + 1);
        if l >= 2 {
            let below = m.mult_head(l - 1, ring.add(i, -1)) as i64;
            c = &c * &(LaurentPoly::one() - LaurentPoly::v_pow(2 * (below + 1)));
        }
        out.add_unchecked(&target, &c);
    }
    out
}

fn linear(u: &PBWVector, i: i64, degree: DegreeVector, on_basis: impl Fn(i64, &Multisegment) -> PBWVector) -> PBWVector {
    let mut out = PBWVector::zero(u.ring, degree);
    for (m, c) in &u.terms {
        for (k, x) in &on_basis(i, m).terms {
            out.add_unchecked(k, &(x * c));
        }
    }
    out
}

pub fn f_action(i: i64, u: &PBWVector) -> PBWVector {
    let i = u.ring.norm(i);
    linear(u, i, u.degree.plus(&DegreeVector::unit(i)), f_basis)
}

pub fn e_prime_action(i: i64, u: &PBWVector) -> PBWVector {
    let i = u.ring.norm(i);
    linear(u, i, u.degree.minus(&DegreeVector::unit(i)), e_prime_basis)
}

/// The divided power `f_i^(a) u = f_i^a u / [a]!`.
pub fn f_divided_power(i: i64, a: usize, u: &PBWVector) -> Result<PBWVector> {
    let mut out = u.clone();
    for _ in 0..a {
        out = f_action(i, &out);
    }
    out.div_exact(&gauss_factorial(a as u32))
        .ok_or_else(|| Error::DivisionFailure(format!("f_{i}^{a} applied to {u} is not divisible by [{a}]!")))
}

/// `(<m>, <m>)`: the product over segments of
/// `v^{-C(k,2)} (1 - v^2)^{(l-1) k} / [k]!` with `k = m_{(l;i]}`.
pub fn basis_norm(m: &Multisegment) -> RationalFunction {
    let mut num = LaurentPoly::one();
    let mut den = LaurentPoly::one();
    let one_minus = LaurentPoly::one() - LaurentPoly::v_pow(2);
    for (seg, k) in m.iter() {
        let k64 = k as i64;
        num = &num.shift(-(k64 * (k64 - 1) / 2)) * &one_minus.pow(((seg.length - 1) * k) as u32);
        den = &den * &gauss_factorial(k as u32);
    }
    RationalFunction::new(num, den).expect("[k]! is nonzero")
}

pub fn scalar_product(u: &PBWVector, w: &PBWVector) -> Result<RationalFunction> {
    if u.is_zero() || w.is_zero() {
        return Ok(RationalFunction::zero());
    }
    if u.degree != w.degree || u.ring != w.ring {
        return Err(Error::DegreeMismatch(format!("scalar product of degrees {} and {}", u.degree, w.degree)));
    }
    let mut acc = RationalFunction::zero();
    for (m, c) in &u.terms {
        if let Some(d) = w.terms.get(m) {
            acc = acc.add(&basis_norm(m).scale(&(c * d)));
        }
    }
    Ok(acc)
}

fn check_ring(ring: VertexRing, a: &DegreeVector, b: &DegreeVector) -> Vec<i64> {
    let mut support: Vec<i64> = a.support();
    support.extend(b.support());
    support.sort_unstable();
    support.dedup();
    support.into_iter().map(|i| ring.norm(i)).collect()
}

/// `m(a, b) = sum_i a_i b_{i-1} + sum_i a_i b_i`.
pub fn bilinear_m(ring: VertexRing, a: &DegreeVector, b: &DegreeVector) -> i64 {
    check_ring(ring, a, b)
        .into_iter()
        .map(|i| a.get(i) * b.get(ring.add(i, -1)) + a.get(i) * b.get(i))
        .sum()
}

/// `r(a, b) = -sum_i a_i b_{i-1} + sum_i a_i b_i`.
pub fn bilinear_r(ring: VertexRing, a: &DegreeVector, b: &DegreeVector) -> i64 {
    check_ring(ring, a, b)
        .into_iter()
        .map(|i| -a.get(i) * b.get(ring.add(i, -1)) + a.get(i) * b.get(i))
        .sum()
}

/// `|Aut k[m]|` over `F_q` from `q^eps(m) prod phi_{m_(l;i]}(q^{-1})`,
/// with `phi_k(t) = (1-t)(1-t^2)...(1-t^k)`.
pub fn aut_order(m: &Multisegment, q: u64) -> BigUint {
    let qb = BigUint::from(q);
    let eps = endo_dim(m) as u32;
    // q^eps prod_j (1 - q^{-j}) = q^{eps - sum j} prod_j (q^j - 1)
    let mut shift = eps as i64;
    let mut acc = BigUint::one();
    for (_, k) in m.iter() {
        for j in 1..=k as u32 {
            acc *= qb.pow(j) - 1u32;
            shift -= j as i64;
        }
    }
    assert!(shift >= 0, "eps(m) is at least the dimension of the semisimple part");
    acc * qb.pow(shift as u32)
}

fn check_triple(o: &Multisegment, p: &Multisegment, q: &Multisegment) -> Result<()> {
    if q.degree() != o.degree().plus(&p.degree()) {
        return Err(Error::DegreeMismatch(format!("degree({q}) != degree({o}) + degree({p})")));
    }
    Ok(())
}

/// `dim O + dim P - dim Q + m(dim V, dim W)` with `V` the quotient `O` and
/// `W` the submodule `P`.
pub fn alpha_orbit_form(o: &Multisegment, p: &Multisegment, q: &Multisegment) -> Result<i64> {
    check_triple(o, p, q)?;
    Ok(orbit_dim(o) as i64 + orbit_dim(p) as i64 - orbit_dim(q) as i64 + bilinear_m(q.ring(), &o.degree(), &p.degree()))
}

/// `-eps(O) - eps(P) + eps(Q) - r(dim V, dim W)`.
pub fn alpha_endo_form(o: &Multisegment, p: &Multisegment, q: &Multisegment) -> Result<i64> {
    check_triple(o, p, q)?;
    Ok(-(endo_dim(o) as i64) - endo_dim(p) as i64 + endo_dim(q) as i64 - bilinear_r(q.ring(), &o.degree(), &p.degree()))
}

/// The twisting exponent of the Hall product; both forms are computed and
/// must agree.
pub fn alpha(o: &Multisegment, p: &Multisegment, q: &Multisegment) -> Result<i64> {
    let a = alpha_orbit_form(o, p, q)?;
    let b = alpha_endo_form(o, p, q)?;
    if a != b {
        return Err(Error::InvariantViolation(format!("alpha({o}, {p}, {q}): orbit form {a}, endomorphism form {b}")));
    }
    Ok(a)
}

/// Default bound on the total degree of a Hall product.
pub const DEFAULT_HALL_DEGREE_BOUND: usize = 6;

/// A polynomial in `q` with integer coefficients, lowest degree first.
pub type HallPolynomial = Vec<i64>;

/// Hall polynomials `F^Q_{O,P}` for a fixed `Q` and every pair `(P, O)`
/// with `dim P = sub_dim`, keyed by `(P, O)`. Counts are taken at
/// successive prime powers until the interpolant predicts the next count,
/// then checked at one further prime power.
pub fn hall_polynomials(q_ms: &Multisegment, sub_dim: &DegreeVector) -> Result<BTreeMap<(Multisegment, Multisegment), HallPolynomial>> {
    let d = q_ms.degree();
    let max_degree: i64 = d.iter().map(|(i, di)| sub_dim.get(i) * (di - sub_dim.get(i))).sum::<i64>().max(0);
    let mut points: Vec<(u64, TypeCounts)> = Vec::new();
    let mut qs = prime_powers();
    let count_at = |q: u64| -> Result<BTreeMap<(Multisegment, Multisegment), u64>> {
        submodule_types(q_ms, sub_dim, &GaloisField::new(q)?)
    };
    loop {
        let q = qs.next().expect("infinitely many prime powers");
        let counts = count_at(q)?;
        if points.len() >= 2 {
            let Some(fitted) = interpolate_all(&points) else {
                points.push((q, counts));
                continue;
            };
            if predicts(&fitted, q, &counts) {
                let check_q = qs.next().expect("infinitely many prime powers");
                let check = count_at(check_q)?;
                if !predicts(&fitted, check_q, &check) {
                    return Err(Error::InterpolationInconsistency(format!(
                        "Hall polynomials of {q_ms} fitted on {} points fail at q = {check_q}",
                        points.len()
                    )));
                }
                return Ok(fitted);
            }
        }
        points.push((q, counts));
        if points.len() as i64 > max_degree + 2 {
            return Err(Error::InterpolationInconsistency(format!(
                "Hall polynomials of {q_ms} do not stabilise within degree {max_degree}"
            )));
        }
    }
}

fn predicts(fitted: &BTreeMap<(Multisegment, Multisegment), HallPolynomial>, q: u64, counts: &TypeCounts) -> bool {
    let keys: std::collections::BTreeSet<_> = fitted.keys().chain(counts.keys()).collect();
    keys.into_iter().all(|k| {
        let predicted = fitted.get(k).map_or(Some(0), |p| eval_poly(p, q as i128));
        predicted == Some(counts.get(k).copied().unwrap_or(0) as i128)
    })
}

fn eval_poly(p: &[i64], q: i128) -> Option<i128> {
    p.iter().rev().try_fold(0i128, |acc, &c| acc.checked_mul(q)?.checked_add(c as i128))
}

/// `None` while some interpolant has non-integral coefficients.
fn interpolate_all(
    points: &[(u64, TypeCounts)],
) -> Option<BTreeMap<(Multisegment, Multisegment), HallPolynomial>> {
    let keys: std::collections::BTreeSet<&(Multisegment, Multisegment)> = points.iter().flat_map(|(_, c)| c.keys()).collect();
    keys.into_iter()
        .map(|key| {
            let xs: Vec<(i64, i64)> = points.iter().map(|(q, c)| (*q as i64, c.get(key).copied().unwrap_or(0) as i64)).collect();
            interpolate(&xs).map(|p| (key.clone(), p))
        })
        .collect()
}

/// Lagrange interpolation over the rationals; `None` unless every
/// coefficient is an integer.
fn interpolate(points: &[(i64, i64)]) -> Option<Vec<i64>> {
    let n = points.len();
    let mut coeffs = vec![BigRational::zero(); n];
    for (j, &(xj, yj)) in points.iter().enumerate() {
        // basis polynomial prod_{k != j} (x - x_k) / (x_j - x_k)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (k, &(xk, _)) in points.iter().enumerate() {
            if k == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (t, c) in basis.iter().enumerate() {
                next[t + 1] += c;
                next[t] -= c * BigRational::from_integer(xk.into());
            }
            basis = next;
            denom *= BigRational::from_integer((xj - xk).into());
        }
        let scale = BigRational::from_integer(yj.into()) / denom;
        for (t, c) in basis.into_iter().enumerate() {
            coeffs[t] += c * &scale;
        }
    }
    let mut out: Vec<i64> = Vec::with_capacity(n);
    for c in coeffs {
        if !c.is_integer() {
            return None;
        }
        out.push(c.to_integer().to_i64()?);
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    Some(out)
}

/// `F(v^{-2})` as a Laurent polynomial.
pub fn hall_polynomial_in_v(p: &[i64]) -> LaurentPoly {
    LaurentPoly::from_terms(p.iter().enumerate().map(|(k, &c)| (-2 * k as i64, c)))
}

/// `<O> o <P> = sum_Q v^alpha(O,P,Q) F^Q_{O,P}(v^{-2}) <Q>`, extended
/// bilinearly.
pub fn hall_product(u: &PBWVector, w: &PBWVector) -> Result<PBWVector> {
    if u.ring != w.ring {
        return Err(Error::RingMismatch("Hall product of vectors over different rings".into()));
    }
    let ring = u.ring;
    let degree = u.degree.plus(&w.degree);
    let total = degree.total().max(0) as usize;
    let bound = crate::degree_bound(DEFAULT_HALL_DEGREE_BOUND);
    if total > bound {
        return Err(Error::BoundExceeded { what: "Hall product degree", value: total, bound });
    }
    let mut out = PBWVector::zero(ring, degree.clone());
    if u.is_zero() || w.is_zero() {
        return Ok(out);
    }
    for q_ms in enumerate::with_degree(ring, &degree) {
        let polys = hall_polynomials(&q_ms, &w.degree)?;
        for ((p, o), poly) in polys {
            let (cu, cw) = (u.coeff(&o), w.coeff(&p));
            if cu.is_zero() || cw.is_zero() {
                continue;
            }
            let c = &hall_polynomial_in_v(&poly).shift(alpha(&o, &p, &q_ms)?) * &(&cu * &cw);
            out.add_unchecked(&q_ms, &c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(text: &str, ring: VertexRing) -> Multisegment {
        Multisegment::parse(text, ring).unwrap()
    }

    fn basis(text: &str, ring: VertexRing) -> PBWVector {
        PBWVector::basis(&ms(text, ring))
    }

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    const Z3: VertexRing = VertexRing::Cyclic(3);

    #[test]
    fn f_action_examples() {
        let empty = PBWVector::basis(&Multisegment::empty(Z3));
        assert_eq!(f_action(1, &empty), basis("(1;1]", Z3));
        assert_eq!(f_action(1, &basis("(1;1]", Z3)), basis("2(1;1]", Z3).scale(&gauss_int(2)));
        let mut expected = basis("(2;1]", Z3);
        expected = expected.add(&basis("(1;0]+(1;1]", Z3).scale(&LaurentPoly::v_pow(1))).unwrap();
        assert_eq!(f_action(1, &basis("(1;0]", Z3)), expected);
    }

    #[test]
    fn e_prime_examples() {
        let empty = PBWVector::basis(&Multisegment::empty(Z3));
        assert!(e_prime_action(1, &empty).is_zero());
        assert_eq!(e_prime_action(1, &basis("(1;1]", Z3)), empty);
        assert_eq!(e_prime_action(1, &basis("(2;1]", Z3)), basis("(1;0]", Z3).scale(&lp(&[(0, 1), (2, -1)])));
    }

    #[test]
    fn norms() {
        let one = RationalFunction::from_poly(LaurentPoly::one());
        assert_eq!(scalar_product(&PBWVector::basis(&Multisegment::empty(Z3)), &PBWVector::basis(&Multisegment::empty(Z3))).unwrap(), one);
        let b = basis("(2;1]", Z3);
        assert_eq!(scalar_product(&b, &b).unwrap(), RationalFunction::from_poly(lp(&[(0, 1), (2, -1)])));
        let b = basis("2(1;1]", Z3);
        assert_eq!(scalar_product(&b, &b).unwrap(), RationalFunction::new(LaurentPoly::v_pow(-1), gauss_int(2)).unwrap());
        assert!(scalar_product(&basis("(1;1]", Z3), &basis("(1;0]", Z3)).is_err());
    }

    #[test]
    fn bilinear_examples() {
        let z2 = VertexRing::Cyclic(2);
        let zero = DegreeVector::zero();
        let a = DegreeVector::from_dense(&[1, 1]);
        assert_eq!(bilinear_m(z2, &zero, &a), 0);
        assert_eq!(bilinear_m(z2, &a, &a), 4);
        assert_eq!(bilinear_r(z2, &a, &a), 0);
    }

    #[test]
    fn aut_order_examples() {
        for q in [2u64, 3, 4, 5] {
            assert_eq!(aut_order(&ms("(1;1]", Z3), q), BigUint::from(q - 1));
            assert_eq!(aut_order(&ms("2(1;1]", Z3), q), BigUint::from((q * q - 1) * (q * q - q)));
            assert_eq!(aut_order(&ms("(2;1]", Z3), q), BigUint::from(q - 1));
        }
    }

    #[test]
    fn alpha_examples() {
        let e = Multisegment::empty(Z3);
        assert_eq!(alpha(&ms("(1;1]", Z3), &e, &ms("(1;1]", Z3)).unwrap(), 0);
        assert_eq!(alpha(&ms("(1;1]", Z3), &ms("(1;0]", Z3), &ms("(2;1]", Z3)).unwrap(), 0);
        assert_eq!(alpha(&ms("(1;1]", Z3), &ms("(1;1]", Z3), &ms("2(1;1]", Z3)).unwrap(), 1);
        assert!(alpha(&ms("(1;1]", Z3), &e, &ms("(1;0]", Z3)).is_err());
    }

    #[test]
    fn interpolation() {
        assert_eq!(interpolate(&[(2, 3), (3, 4), (4, 5)]), Some(vec![1, 1]));
        assert_eq!(interpolate(&[(2, 1), (3, 1)]), Some(vec![1]));
        assert_eq!(interpolate(&[(2, 0), (3, 0)]), Some(vec![]));
        assert_eq!(interpolate(&[(2, 0), (4, 1)]), None);
    }

    #[test]
    fn hall_product_examples() {
        let empty = PBWVector::basis(&Multisegment::empty(Z3));
        let a = basis("(1;1]", Z3);
        assert_eq!(hall_product(&a, &empty).unwrap(), a);
        let b = basis("(1;0]", Z3);
        assert_eq!(hall_product(&a, &b).unwrap(), f_action(1, &b));
        assert_eq!(hall_product(&a, &a).unwrap(), basis("2(1;1]", Z3).scale(&gauss_int(2)));
    }

    #[test]
    fn json_round_trip() {
        let u = f_action(1, &basis("(1;0]", Z3));
        assert_eq!(PBWVector::from_json(&u.to_json(), Z3).unwrap(), u);
        assert_eq!(u.to_string(), "v<[0;1)+[1;1)> + <[0;2)>");
    }
}
