//! The canonical basis in PBW coordinates.
//!
//! `b_m` is built from the string property of divided powers: if
//! `epsilon_i(m) = a > 0` and `m0 = e_tilde_i^a(m)`, then
//! `f_i^(a) b_{m0} = b_m + sum gamma b_{m'}` over labels with
//! `epsilon_i(m') > a`, with bar-invariant `gamma`. The `gamma` are read
//! off PBW coefficients in decreasing orbit dimension, which respects the
//! unitriangularity of each `b_{m'}` along orbit closures.

use std::cmp::Reverse;
use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::crystal::{active_residues, e_tilde, epsilon, highest_weight_path};
use crate::enumerate;
use crate::error::{Error, Result};
use crate::hallpbw::{f_divided_power, PBWVector};
use crate::involution::sharp;
use crate::laurent::LaurentPoly;
use crate::multisegment::{DegreeVector, Multisegment};
use crate::quiverrep::{orbit_dim, RankTable};
use crate::ring::VertexRing;

/// Divided powers `f_i^(a)` applied from left to right to `<empty>`.
pub type Word = Vec<(i64, usize)>;

/// The rebuild word of the highest-weight path of `m`, grouped into runs.
pub fn monomial_word(m: &Multisegment) -> Result<Word> {
    let path = highest_weight_path(m);
    if !path.top.is_empty() {
        return Err(Error::NonAperiodic(m.to_string()));
    }
    Ok(path.rebuild_runs())
}

pub fn apply_word(ring: VertexRing, word: &[(i64, usize)]) -> Result<PBWVector> {
    let mut u = PBWVector::basis(&Multisegment::empty(ring));
    for &(i, a) in word {
        u = f_divided_power(i, a, &u)?;
    }
    Ok(u)
}

/// The monomial `A_m` of [`monomial_word`], required to be congruent to
/// `<m>` modulo `v`.
///
/// This congruence fails for some labels (over `Z/3`, `A_{2[0;1)+[2;1)}`
/// is `f_0 f_2 f_0 <empty>`, a sum of two canonical elements), and then
/// the error carries the offending coefficient. [`CanonicalBasis`] does
/// not depend on it.
pub fn monomial_for(m: &Multisegment) -> Result<PBWVector> {
    let a = apply_word(m.ring(), &monomial_word(m)?)?;
    if !is_congruent_mod_v(m, &a) {
        let bad = a
            .iter()
            .find(|(k, c)| if *k == m { **c != LaurentPoly::one() } else { !c.valuation_at_least(1) })
            .map(|(k, c)| format!("coefficient of <{k}> is {c}"))
            .unwrap_or_else(|| format!("<{m}> is missing"));
        return Err(Error::LeadingTermFailure(format!("A_{m}: {bad}")));
    }
    Ok(a)
}

/// Every coefficient other than the one at `<m>` lies in `v Z[v]`.
pub fn is_congruent_mod_v(m: &Multisegment, u: &PBWVector) -> bool {
    u.coeff(m) == LaurentPoly::one() && u.iter().all(|(k, c)| k == m || c.valuation_at_least(1))
}

/// Choices that must not change the result: which residue string is
/// peeled first, and how ties in orbit dimension are broken.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Schedule {
    /// Smallest residue in ring order, ties by increasing label.
    Primary,
    /// Largest residue in ring order, ties by decreasing label.
    Alternate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalEntry {
    /// `b_m` in the PBW basis.
    pub vector: PBWVector,
    /// `b_m` as a combination of the monomials of [`Word`]s.
    pub words: BTreeMap<Word, LaurentPoly>,
}

/// Memoized canonical basis elements over one ring.
#[derive(Clone, Debug)]
pub struct CanonicalBasis {
    ring: VertexRing,
    schedule: Schedule,
    memo: BTreeMap<Multisegment, CanonicalEntry>,
}

impl CanonicalBasis {
    pub fn new(ring: VertexRing, schedule: Schedule) -> Self {
        CanonicalBasis { ring, schedule, memo: BTreeMap::new() }
    }

    pub fn ring(&self) -> VertexRing {
        self.ring
    }

    pub fn element(&mut self, m: &Multisegment) -> Result<&CanonicalEntry> {
        if m.ring() != self.ring {
            return Err(Error::RingMismatch(format!("{m} is over {}, basis over {}", m.ring(), self.ring)));
        }
        let total = m.total_degree();
        let bound = crate::degree_bound(default_bound(self.ring));
        if total > bound {
            return Err(Error::BoundExceeded { what: "canonical basis degree", value: total, bound });
        }
        self.compute(m, None)?;
        Ok(&self.memo[m])
    }

    fn compute(&mut self, m: &Multisegment, residue: Option<i64>) -> Result<()> {
        if self.memo.contains_key(m) {
            return Ok(());
        }
        if m.is_empty() {
            let entry = CanonicalEntry {
                vector: PBWVector::basis(m),
                words: BTreeMap::from([(Word::new(), LaurentPoly::one())]),
            };
            self.memo.insert(m.clone(), entry);
            return Ok(());
        }
        if self.ring.is_cyclic() && !m.is_aperiodic()? {
            return Err(Error::NonAperiodic(m.to_string()));
        }
        let i = match residue {
            Some(i) => i,
            None => {
                let live: Vec<i64> = active_residues(m).into_iter().filter(|&i| epsilon(m, i) > 0).collect();
                let pick = match self.schedule {
                    Schedule::Primary => live.first(),
                    Schedule::Alternate => live.last(),
                };
                *pick.ok_or_else(|| Error::NonAperiodic(m.to_string()))?
            }
        };
        let a = epsilon(m, i);
        let mut m0 = m.clone();
        for _ in 0..a {
            m0 = e_tilde(&m0, i).expect("epsilon counts defined steps");
        }
        self.compute(&m0, None)?;
        let start = &self.memo[&m0];
        let mut vector = f_divided_power(i, a, &start.vector)?;
        let mut words: BTreeMap<Word, LaurentPoly> = start
            .words
            .iter()
            .map(|(w, c)| {
                let mut w = w.clone();
                w.push((i, a));
                (w, c.clone())
            })
            .collect();

        let mut others: Vec<Multisegment> =
            labels(self.ring, &m.degree()).into_iter().filter(|k| k != m && epsilon(k, i) > a).collect();
        match self.schedule {
            Schedule::Primary => others.sort_by_cached_key(|k| (Reverse(orbit_dim(k)), k.clone())),
            Schedule::Alternate => others.sort_by_cached_key(|k| (Reverse(orbit_dim(k)), Reverse(k.clone()))),
        }
        for k in &others {
            let gamma = vector.coeff(k).bar_symmetric_part();
            if gamma.is_zero() {
                continue;
            }
            self.compute(k, Some(i))?;
            let b = &self.memo[k];
            vector = vector.add(&b.vector.scale(&-&gamma))?;
            for (w, c) in &b.words {
                let e = words.entry(w.clone()).or_default();
                *e = &*e - &(c * &gamma);
            }
            words.retain(|_, c| !c.is_zero());
        }
        check_entry(m, &vector)?;
        self.memo.insert(m.clone(), CanonicalEntry { vector, words });
        Ok(())
    }

    /// All elements of degree `d`.
    pub fn table(&mut self, d: &DegreeVector) -> Result<CanonicalTable> {
        let mut order = labels(self.ring, d);
        order.sort_by_cached_key(|m| (RankTable::of_multisegment(m).sum(), m.clone()));
        let mut entries = BTreeMap::new();
        for m in &order {
            entries.insert(m.clone(), self.element(m)?.clone());
        }
        Ok(CanonicalTable { ring: self.ring, degree: d.clone(), order, entries })
    }
}

#[derive(Clone, Debug)]
pub struct CanonicalTable {
    pub ring: VertexRing,
    pub degree: DegreeVector,
    /// Labels by increasing rank-table sum, so orbit closures grow down
    /// the list.
    pub order: Vec<Multisegment>,
    pub entries: BTreeMap<Multisegment, CanonicalEntry>,
}

/// Labels of the canonical basis in a given degree.
pub fn labels(ring: VertexRing, d: &DegreeVector) -> Vec<Multisegment> {
    enumerate::with_degree(ring, d)
        .into_iter()
        .filter(|m| !ring.is_cyclic() || m.is_aperiodic().unwrap_or(false))
        .collect()
}

/// Default bound on the total degree of a canonical-basis computation.
pub fn default_bound(ring: VertexRing) -> usize {
    match ring {
        VertexRing::Cyclic(2) => 8,
        _ => 6,
    }
}

pub fn canonical_basis(ring: VertexRing, d: &DegreeVector) -> Result<CanonicalTable> {
    canonical_basis_scheduled(ring, d, Schedule::Primary)
}

pub fn canonical_basis_scheduled(ring: VertexRing, d: &DegreeVector, schedule: Schedule) -> Result<CanonicalTable> {
    CanonicalBasis::new(ring, schedule).table(d)
}

fn check_entry(m: &Multisegment, b: &PBWVector) -> Result<()> {
    if b.coeff(m) != LaurentPoly::one() {
        return Err(Error::InvariantViolation(format!("coefficient of <{m}> in b_{m} is {}", b.coeff(m))));
    }
    for (k, c) in b.iter() {
        if k != m && !(c.valuation_at_least(1) && c.is_nonnegative()) {
            return Err(Error::InvariantViolation(format!("coefficient of <{k}> in b_{m} is {c}")));
        }
    }
    Ok(())
}

/// Tables for every degree vector of total at most `max_total`; over the
/// integers contents stay in the window `[0, max_total - 1]`.
pub fn tables_up_to(ring: VertexRing, max_total: usize) -> Result<Vec<CanonicalTable>> {
    let mut basis = CanonicalBasis::new(ring, Schedule::Primary);
    let mut out = Vec::new();
    for t in 0..=max_total {
        let degrees = match ring {
            VertexRing::Cyclic(n) => enumerate::cyclic_degree_vectors(n, t),
            VertexRing::Integers => enumerate::window_degree_vectors(0, max_total.max(1) as i64 - 1, t),
        };
        for d in degrees {
            out.push(basis.table(&d)?);
        }
    }
    Ok(out)
}

impl CanonicalTable {
    pub fn get(&self, m: &Multisegment) -> Option<&PBWVector> {
        self.entries.get(m).map(|e| &e.vector)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Re-check unitriangularity and positivity of every entry.
    pub fn validate(&self) -> Result<()> {
        for (m, e) in &self.entries {
            check_entry(m, &e.vector)?;
        }
        Ok(())
    }

    /// One row per label, `b[m] = <m> + sum c(v)<m'>`.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for m in &self.order {
            let b = &self.entries[m].vector;
            let mut row = format!("b[{m}] = ⟨{m}⟩");
            for (k, c) in b.iter().filter(|(k, _)| *k != m) {
                if c.terms().count() == 1 {
                    row.push_str(&format!(" + {c}⟨{k}⟩"));
                } else {
                    row.push_str(&format!(" + ({c})⟨{k}⟩"));
                }
            }
            out.push_str(&row);
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let basis: Vec<Value> = self
            .order
            .iter()
            .map(|m| json!({"label": m.to_string(), "expansion": self.entries[m].vector.to_json()["terms"].clone()}))
            .collect();
        json!({"ring": self.ring.to_string(), "degree": self.degree.to_string(), "basis": basis})
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SharpReport {
    pub checked: usize,
    /// Labels `m` for which the image of `b_m` under `f_i -> f_{-i}` is not
    /// `b_{sharp(m)}`.
    pub sharp_mismatches: Vec<String>,
    /// Labels `m` for which negating all contents in the PBW keys of `b_m`
    /// does not give `b_{flat(m)}`.
    pub relabel_mismatches: Vec<String>,
}

impl SharpReport {
    pub fn passed(&self) -> bool {
        self.sharp_mismatches.is_empty() && self.relabel_mismatches.is_empty()
    }
}

/// Compare `table` (degree `d`) with `image` (degree `-d`).
///
/// The generator map `f_i -> f_{-i}` is applied through the word expansion
/// of each `b_m` and must give `b_{sharp(m)}`. Negating contents on PBW
/// keys sends `(l;j]` to `[-j;l)`, which is `flat`, so that relabelling is
/// compared with `b_{flat(m)}`.
pub fn sharp_on_canonical(table: &CanonicalTable, image: &CanonicalTable) -> Result<SharpReport> {
    let ring = table.ring;
    let mut report = SharpReport::default();
    let mut cache: BTreeMap<Word, PBWVector> = BTreeMap::new();
    for m in &table.order {
        report.checked += 1;
        let entry = &table.entries[m];
        let target_label = sharp(m)?;
        let mut acc = PBWVector::zero(ring, image.degree.clone());
        for (w, c) in &entry.words {
            let negated: Word = w.iter().map(|&(i, a)| (ring.neg(i), a)).collect();
            if !cache.contains_key(&negated) {
                cache.insert(negated.clone(), apply_word(ring, &negated)?);
            }
            acc = acc.add(&cache[&negated].scale(c))?;
        }
        match image.get(&target_label) {
            Some(b) if *b == acc => {}
            _ => report.sharp_mismatches.push(format!("{m} -> {target_label}")),
        }
        let relabelled = entry.vector.relabel(|k| k.flat())?;
        match image.get(&m.flat()) {
            Some(b) if *b == relabelled => {}
            _ => report.relabel_mismatches.push(format!("{m} -> {}", m.flat())),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(text: &str, ring: VertexRing) -> Multisegment {
        Multisegment::parse(text, ring).unwrap()
    }

    const Z2: VertexRing = VertexRing::Cyclic(2);

    #[test]
    fn monomial_examples() {
        let empty = Multisegment::empty(Z2);
        assert_eq!(monomial_for(&empty).unwrap(), PBWVector::basis(&empty));
        let a = monomial_for(&ms("(2;1]", Z2)).unwrap();
        let expected = PBWVector::basis(&ms("(2;1]", Z2))
            .add(&PBWVector::basis(&ms("(1;0]+(1;1]", Z2)).scale(&LaurentPoly::v_pow(1)))
            .unwrap();
        assert_eq!(a, expected);
        assert_eq!(monomial_for(&ms("2(1;0]", Z2)).unwrap(), PBWVector::basis(&ms("2(1;0]", Z2)));
        assert!(matches!(monomial_for(&ms("(1;0]+(1;1]", Z2)), Err(Error::NonAperiodic(_))));
    }

    #[test]
    fn monomial_can_miss_leading_term() {
        let z3 = VertexRing::Cyclic(3);
        let m = ms("2[0;1)+[2;1)", z3);
        assert!(matches!(monomial_for(&m), Err(Error::LeadingTermFailure(_))));
        // f_0 f_2 f_0 = b_m + b_{[0;1)+[2;2)}
        let t = canonical_basis(z3, &m.degree()).unwrap();
        let other = ms("[0;1)+[2;2)", z3);
        let sum = t.get(&m).unwrap().add(t.get(&other).unwrap()).unwrap();
        assert_eq!(apply_word(z3, &[(0, 1), (2, 1), (0, 1)]).unwrap(), sum);
        assert_eq!(t.get(&m).unwrap(), &PBWVector::basis(&m));
    }

    #[test]
    fn degree_one_one() {
        let t = canonical_basis(Z2, &DegreeVector::from_dense(&[1, 1])).unwrap();
        assert_eq!(t.len(), 2);
        let periodic = ms("(1;0]+(1;1]", Z2);
        for head in ["(2;1]", "(2;0]"] {
            let m = ms(head, Z2);
            let b = t.get(&m).unwrap();
            assert_eq!(b.coeff(&m), LaurentPoly::one());
            assert_eq!(b.coeff(&periodic), LaurentPoly::v_pow(1));
            assert_eq!(b.len(), 2);
        }
    }

    #[test]
    fn integer_example() {
        let z = VertexRing::Integers;
        let t = canonical_basis(z, &DegreeVector::from_entries([(0, 1), (1, 1)])).unwrap();
        let b = t.get(&ms("[0;2)", z)).unwrap();
        assert_eq!(b.coeff(&ms("[0;1)+[1;1)", z)), LaurentPoly::v_pow(1));
        assert_eq!(t.get(&ms("[0;1)+[1;1)", z)).unwrap(), &PBWVector::basis(&ms("[0;1)+[1;1)", z)));
    }

    #[test]
    fn degree_one() {
        let z3 = VertexRing::Cyclic(3);
        let t = canonical_basis(z3, &DegreeVector::unit(2)).unwrap();
        assert_eq!(t.get(&ms("(1;2]", z3)).unwrap(), &PBWVector::basis(&ms("(1;2]", z3)));
    }

    #[test]
    fn schedules_agree_small() {
        for d in enumerate::cyclic_degree_vectors(2, 4) {
            let a = canonical_basis_scheduled(Z2, &d, Schedule::Primary).unwrap();
            let b = canonical_basis_scheduled(Z2, &d, Schedule::Alternate).unwrap();
            for m in &a.order {
                assert_eq!(a.get(m), b.get(m), "label {m}");
            }
        }
    }

    #[test]
    fn sharp_equivariance_small() {
        let z3 = VertexRing::Cyclic(3);
        for t in 0..=3 {
            for d in enumerate::cyclic_degree_vectors(3, t) {
                let table = canonical_basis(z3, &d).unwrap();
                let image = canonical_basis(z3, &d.negated(z3)).unwrap();
                let report = sharp_on_canonical(&table, &image).unwrap();
                assert!(report.passed(), "{report:?}");
            }
        }
    }

    #[test]
    fn table_rendering() {
        let t = canonical_basis(Z2, &DegreeVector::from_dense(&[1, 1])).unwrap();
        let text = t.to_table();
        assert!(text.contains("b[[1;2)] = ⟨[1;2)⟩ + v⟨[0;1)+[1;1)⟩"), "{text}");
        assert_eq!(t.to_json()["basis"].as_array().unwrap().len(), 2);
    }
}
