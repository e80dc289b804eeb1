//! Segments, multisegments and their elementary transformations.
//!
//! A segment `[i;l)` is the run `i, i+1, ..., i+l-1` of vertices; the same
//! segment written by its head `j = i+l-1` is `(l;j]`. A multisegment is a
//! finitely supported multiset of segments over a [`VertexRing`].

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::VertexRing;

/// A segment stored by origin and length. The origin is canonical for the
/// ring it belongs to; that invariant is maintained by [`Multisegment`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Segment {
    pub origin: i64,
    pub length: usize,
}

impl Segment {
    /// `[origin; length)`.
    pub fn new(ring: VertexRing, origin: i64, length: usize) -> Segment {
        assert!(length >= 1, "segments have positive length");
        Segment { origin: ring.norm(origin), length }
    }

    /// `(length; head]`.
    pub fn from_head(ring: VertexRing, length: usize, head: i64) -> Segment {
        Segment::new(ring, head - length as i64 + 1, length)
    }

    pub fn head(&self, ring: VertexRing) -> i64 {
        ring.norm(self.origin + self.length as i64 - 1)
    }

    /// Contents of the cells, from origin to head.
    pub fn contents(&self, ring: VertexRing) -> impl Iterator<Item = i64> + '_ {
        let origin = self.origin;
        (0..self.length as i64).map(move |k| ring.norm(origin + k))
    }
}

/// Graded dimension vector, stored sparsely (zero entries are dropped).
/// Entries are signed so that formal degrees such as `d - e_i` stay
/// representable.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DegreeVector(BTreeMap<i64, i64>);

impl DegreeVector {
    pub fn zero() -> DegreeVector {
        DegreeVector(BTreeMap::new())
    }

    pub fn unit(i: i64) -> DegreeVector {
        let mut d = DegreeVector::zero();
        d.add_at(i, 1);
        d
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (i64, i64)>) -> DegreeVector {
        let mut d = DegreeVector::zero();
        for (i, k) in entries {
            d.add_at(i, k);
        }
        d
    }

    /// Dense vector `(d_0, ..., d_{n-1})` over a cyclic ring.
    pub fn from_dense(dims: &[i64]) -> DegreeVector {
        DegreeVector::from_entries(dims.iter().enumerate().map(|(i, &k)| (i as i64, k)))
    }

    pub fn get(&self, i: i64) -> i64 {
        self.0.get(&i).copied().unwrap_or(0)
    }

    pub fn add_at(&mut self, i: i64, k: i64) {
        let e = self.0.entry(i).or_insert(0);
        *e += k;
        if *e == 0 {
            self.0.remove(&i);
        }
    }

    pub fn plus(&self, other: &DegreeVector) -> DegreeVector {
        let mut d = self.clone();
        for (&i, &k) in &other.0 {
            d.add_at(i, k);
        }
        d
    }

    pub fn minus(&self, other: &DegreeVector) -> DegreeVector {
        let mut d = self.clone();
        for (&i, &k) in &other.0 {
            d.add_at(i, -k);
        }
        d
    }

    pub fn total(&self) -> i64 {
        self.0.values().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.values().all(|&k| k >= 0)
    }

    /// The vector `i -> d_{-i}`.
    pub fn negated(&self, ring: VertexRing) -> DegreeVector {
        DegreeVector::from_entries(self.0.iter().map(|(&i, &k)| (ring.neg(i), k)))
    }

    /// Nonzero entries in increasing vertex order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.0.iter().map(|(&i, &k)| (i, k))
    }

    pub fn support(&self) -> Vec<i64> {
        self.0.keys().copied().collect()
    }
}

impl fmt::Display for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(i, k)| format!("{i}:{k}")).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A label `(mu, a)`: segments `[a_k; mu_k)`, unordered.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Label {
    pub mu: Vec<usize>,
    pub a: Vec<i64>,
}

impl Label {
    pub fn new(mu: Vec<usize>, a: Vec<i64>) -> Result<Label> {
        if mu.len() != a.len() {
            return Err(Error::InvalidInput(format!(
                "label parts have different lengths ({} and {})",
                mu.len(),
                a.len()
            )));
        }
        if mu.contains(&0) {
            return Err(Error::InvalidInput("label lengths must be positive".into()));
        }
        Ok(Label { mu, a })
    }

    /// Sorts the pairs `(mu_k, a_k)` so that permuted labels compare equal.
    pub fn normalized(&self, ring: VertexRing) -> Label {
        let mut pairs: Vec<(usize, i64)> =
            self.mu.iter().copied().zip(self.a.iter().map(|&x| ring.norm(x))).collect();
        pairs.sort_unstable();
        Label { mu: pairs.iter().map(|p| p.0).collect(), a: pairs.iter().map(|p| p.1).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multisegment {
    ring: VertexRing,
    segs: BTreeMap<Segment, usize>,
}

impl Multisegment {
    pub fn empty(ring: VertexRing) -> Multisegment {
        Multisegment { ring, segs: BTreeMap::new() }
    }

    pub fn from_segments(
        ring: VertexRing,
        segs: impl IntoIterator<Item = (Segment, usize)>,
    ) -> Multisegment {
        let mut m = Multisegment::empty(ring);
        for (s, k) in segs {
            m.add(Segment::new(ring, s.origin, s.length), k);
        }
        m
    }

    /// Builds `sum_k [a_k; mu_k)`.
    pub fn from_label(label: &Label, ring: VertexRing) -> Multisegment {
        let mut m = Multisegment::empty(ring);
        for (&l, &a) in label.mu.iter().zip(&label.a) {
            m.add(Segment::new(ring, a, l), 1);
        }
        m
    }

    /// The label of this multisegment, in normalized order.
    pub fn to_label(&self) -> Label {
        let mut mu = Vec::new();
        let mut a = Vec::new();
        for (s, k) in self.iter() {
            for _ in 0..k {
                mu.push(s.length);
                a.push(s.origin);
            }
        }
        Label { mu, a }.normalized(self.ring)
    }

    pub fn ring(&self) -> VertexRing {
        self.ring
    }

    pub fn is_empty(&self) -> bool {
        self.segs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Segment, usize)> + '_ {
        self.segs.iter().map(|(&s, &k)| (s, k))
    }

    /// Number of distinct segments.
    pub fn distinct_len(&self) -> usize {
        self.segs.len()
    }

    /// `m_{[origin; length)}`.
    pub fn mult(&self, origin: i64, length: usize) -> usize {
        if length == 0 {
            return 0;
        }
        let s = Segment::new(self.ring, origin, length);
        self.segs.get(&s).copied().unwrap_or(0)
    }

    /// `m_{(length; head]}`.
    pub fn mult_head(&self, length: usize, head: i64) -> usize {
        if length == 0 {
            return 0;
        }
        let s = Segment::from_head(self.ring, length, head);
        self.segs.get(&s).copied().unwrap_or(0)
    }

    pub fn add(&mut self, seg: Segment, k: usize) {
        if k == 0 {
            return;
        }
        let seg = Segment::new(self.ring, seg.origin, seg.length);
        *self.segs.entry(seg).or_insert(0) += k;
    }

    /// Removes one copy of `seg`; returns false if it is absent.
    pub fn remove_one(&mut self, seg: Segment) -> bool {
        let seg = Segment::new(self.ring, seg.origin, seg.length);
        match self.segs.get_mut(&seg) {
            Some(k) if *k > 1 => {
                *k -= 1;
                true
            }
            Some(_) => {
                self.segs.remove(&seg);
                true
            }
            None => false,
        }
    }

    pub fn add_head(&mut self, length: usize, head: i64, k: usize) {
        self.add(Segment::from_head(self.ring, length, head), k);
    }

    pub fn remove_one_head(&mut self, length: usize, head: i64) -> bool {
        self.remove_one(Segment::from_head(self.ring, length, head))
    }

    /// Sum of all segment lengths (with multiplicity).
    pub fn total_degree(&self) -> usize {
        self.iter().map(|(s, k)| s.length * k).sum()
    }

    /// Number of segments counted with multiplicity.
    pub fn segment_count(&self) -> usize {
        self.segs.values().sum()
    }

    pub fn max_length(&self) -> usize {
        self.segs.keys().map(|s| s.length).max().unwrap_or(0)
    }

    /// Degree vector: `d_i` is the number of cells with content `i`.
    pub fn degree(&self) -> DegreeVector {
        let mut d = DegreeVector::zero();
        for (s, k) in self.iter() {
            for c in s.contents(self.ring) {
                d.add_at(c, k as i64);
            }
        }
        d
    }

    /// Reduction modulo `n`: each `[i;l)` goes to `[i mod n; l)`.
    pub fn reduce_mod(&self, n: u32) -> Result<Multisegment> {
        let target = VertexRing::cyclic(n)?;
        if let VertexRing::Cyclic(m) = self.ring {
            if m % n != 0 {
                return Err(Error::RingMismatch(format!(
                    "cannot reduce a multisegment over zmod:{m} modulo {n}"
                )));
            }
        }
        Ok(Multisegment::from_segments(target, self.iter()))
    }

    /// Aperiodicity: for every length some residue carries no segment of
    /// that length. Only meaningful over a cyclic ring.
    pub fn is_aperiodic(&self) -> Result<bool> {
        let n = self.ring.modulus().ok_or_else(|| {
            Error::RingMismatch("aperiodicity is only defined over cyclic rings".into())
        })?;
        let mut origins_per_length: BTreeMap<usize, usize> = BTreeMap::new();
        for s in self.segs.keys() {
            *origins_per_length.entry(s.length).or_insert(0) += 1;
        }
        Ok(origins_per_length.values().all(|&c| c < n as usize))
    }

    /// Whether the multisegment labels a vertex of the component of the
    /// empty multisegment: always over the integers, aperiodic ones otherwise.
    pub fn is_regular_label(&self) -> bool {
        match self.ring {
            VertexRing::Integers => true,
            VertexRing::Cyclic(_) => self.is_aperiodic().unwrap_or(false),
        }
    }

    /// Periodic: `m_{(l;r]}` does not depend on `r`. Cyclic rings only.
    pub fn is_periodic(&self) -> bool {
        let Some(n) = self.ring.modulus() else {
            return self.is_empty();
        };
        self.segs.keys().all(|s| (0..n as i64).all(|r| self.mult(r, s.length) == self.segs[s]))
    }

    /// Reflection sending `[i;l)` to `(l;-i]`.
    pub fn flat(&self) -> Multisegment {
        let ring = self.ring;
        Multisegment::from_segments(
            ring,
            self.iter().map(|(s, k)| (Segment::from_head(ring, s.length, -s.origin), k)),
        )
    }

    /// Translate every segment by `t`.
    pub fn shifted(&self, t: i64) -> Multisegment {
        let ring = self.ring;
        Multisegment::from_segments(
            ring,
            self.iter().map(|(s, k)| (Segment::new(ring, s.origin + t, s.length), k)),
        )
    }

    /// Reinterpret over a different ring (segment origins are renormalized).
    pub fn with_ring(&self, ring: VertexRing) -> Multisegment {
        Multisegment::from_segments(ring, self.iter())
    }

    /// Canonical text form, e.g. `2[0;2)+[1;3)`; the empty multisegment
    /// prints as `0`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse(text: &str, ring: VertexRing) -> Result<Multisegment> {
        Parser { src: text.as_bytes(), pos: 0, ring }.parse()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<SegmentEntry> = self
            .iter()
            .map(|(s, k)| SegmentEntry { origin: s.origin, length: s.length, mult: k })
            .collect();
        serde_json::to_value(entries).expect("segment entries serialize")
    }

    pub fn from_json(value: &serde_json::Value, ring: VertexRing) -> Result<Multisegment> {
        let entries: Vec<SegmentEntry> = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidInput(format!("bad multisegment JSON: {e}")))?;
        let mut m = Multisegment::empty(ring);
        for e in entries {
            if e.length == 0 || e.mult == 0 {
                return Err(Error::InvalidInput("length and mult must be positive".into()));
            }
            m.add(Segment::new(ring, e.origin, e.length), e.mult);
        }
        Ok(m)
    }
}

/// JSON form of one multisegment entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentEntry {
    pub origin: i64,
    pub length: usize,
    pub mult: usize,
}

impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        for (idx, (s, k)) in self.iter().enumerate() {
            if idx > 0 {
                write!(f, "+")?;
            }
            if k > 1 {
                write!(f, "{k}")?;
            }
            write!(f, "[{};{})", s.origin, s.length)?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: VertexRing,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { offset: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return self.err("expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse().or_else(|_| {
            self.pos = start;
            self.err("integer out of range")
        })
    }

    fn length(&mut self) -> Result<usize> {
        let at = self.pos;
        let l = self.integer()?;
        if l < 1 {
            self.pos = at;
            return self.err("segment length must be positive");
        }
        Ok(l as usize)
    }

    fn parse(mut self) -> Result<Multisegment> {
        let mut m = Multisegment::empty(self.ring);
        if self.peek().is_none() {
            return Ok(m);
        }
        if self.peek() == Some(b'0') {
            let save = self.pos;
            self.pos += 1;
            if self.peek().is_none() {
                return Ok(m);
            }
            self.pos = save;
        }
        loop {
            let mut k = 1usize;
            if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                let at = self.pos;
                let v = self.integer()?;
                if v < 1 {
                    self.pos = at;
                    return self.err("multiplicity must be positive");
                }
                k = v as usize;
            }
            match self.peek() {
                Some(b'[') => {
                    self.pos += 1;
                    let origin = self.integer()?;
                    self.expect(b';')?;
                    let l = self.length()?;
                    self.expect(b')')?;
                    m.add(Segment::new(self.ring, origin, l), k);
                }
                Some(b'(') => {
                    self.pos += 1;
                    let l = self.length()?;
                    self.expect(b';')?;
                    let head = self.integer()?;
                    self.expect(b']')?;
                    m.add(Segment::from_head(self.ring, l, head), k);
                }
                _ => return self.err("expected `[` or `(`"),
            }
            match self.peek() {
                None => return Ok(m),
                Some(b'+') => self.pos += 1,
                Some(_) => return self.err("expected `+` or end of input"),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: VertexRing = VertexRing::Integers;
    const Z2: VertexRing = VertexRing::Cyclic(2);

    fn ms(text: &str, ring: VertexRing) -> Multisegment {
        Multisegment::parse(text, ring).unwrap()
    }

    fn figure_one_label() -> Label {
        Label::new(vec![2, 2, 3, 1, 1, 2, 2, 1], vec![2, 2, 0, 0, 0, -1, -1, -1]).unwrap()
    }

    #[test]
    fn figure_one_label_to_multisegment() {
        let m = Multisegment::from_label(&figure_one_label(), Z);
        assert_eq!(m, ms("2[2;2)+[0;3)+2[0;1)+2[-1;2)+[-1;1)", Z));
        assert_eq!(m.total_degree(), 14);
    }

    #[test]
    fn figure_one_reduction_mod_two() {
        let m = Multisegment::from_label(&figure_one_label(), Z).reduce_mod(2).unwrap();
        assert_eq!(m, ms("2[0;2)+[0;3)+2[0;1)+2[1;2)+[1;1)", Z2));
        assert!(!m.is_aperiodic().unwrap());
    }

    #[test]
    fn label_edge_cases() {
        let empty = Label::new(vec![], vec![]).unwrap();
        assert!(Multisegment::from_label(&empty, Z).is_empty());
        let single = Label::new(vec![3], vec![0]).unwrap();
        assert_eq!(Multisegment::from_label(&single, Z2), ms("[0;3)", Z2));
        assert!(Label::new(vec![1, 2], vec![0]).is_err());
        assert!(Label::new(vec![0], vec![0]).is_err());
    }

    #[test]
    fn reduction_merges_multiplicities() {
        let m = ms("[-1;1)+[1;1)", Z).reduce_mod(2).unwrap();
        assert_eq!(m, ms("2[1;1)", Z2));
        assert!(Multisegment::empty(Z).reduce_mod(2).unwrap().is_empty());
        assert!(ms("[0;1)", Z).reduce_mod(1).is_err());
    }

    #[test]
    fn aperiodicity() {
        assert!(Multisegment::empty(Z2).is_aperiodic().unwrap());
        assert!(!ms("[0;1)+[1;1)", Z2).is_aperiodic().unwrap());
        assert!(ms("[0;1)+[0;2)", Z2).is_aperiodic().unwrap());
        assert!(ms("[0;1)", Z).is_aperiodic().is_err());
    }

    #[test]
    fn flat_examples() {
        assert!(Multisegment::empty(Z).flat().is_empty());
        assert_eq!(ms("[0;2)", Z).flat(), ms("[-1;2)", Z));
        assert_eq!(ms("[1;1)", Z2).flat(), ms("[1;1)", Z2));
    }

    #[test]
    fn degree_examples() {
        assert_eq!(Multisegment::empty(Z).degree(), DegreeVector::zero());
        assert_eq!(ms("[0;3)", Z).degree(), DegreeVector::from_entries([(0, 1), (1, 1), (2, 1)]));
        assert_eq!(ms("[0;3)", Z2).degree(), DegreeVector::from_dense(&[2, 1]));
    }

    #[test]
    fn head_notation() {
        let s = Segment::from_head(Z, 2, 1);
        assert_eq!(s, Segment::new(Z, 0, 2));
        assert_eq!(s.head(Z), 1);
        assert_eq!(ms("(2;1]", Z), ms("[0;2)", Z));
        assert_eq!(Segment::from_head(VertexRing::Cyclic(3), 2, 0).origin, 2);
    }

    #[test]
    fn parser_accepts_grammar() {
        assert!(ms("", Z).is_empty());
        assert!(ms("0", Z).is_empty());
        assert!(ms("  0 ", Z).is_empty());
        let m = ms("2[0;2)+[1;3)", Z);
        assert_eq!(m.mult(0, 2), 2);
        assert_eq!(m.mult(1, 3), 1);
        assert_eq!(ms(" 2 [ 0 ; 2 ) + [1;3) ", Z), m);
        assert_eq!(m.to_string(), "2[0;2)+[1;3)");
        assert_eq!(
            ms("[2;2)+[2;2)+[0;3)+2[0;1)+2[-1;2)+[-1;1)", Z),
            Multisegment::from_label(&figure_one_label(), Z)
        );
    }

    #[test]
    fn parser_reports_offsets() {
        match Multisegment::parse("[0;2)+[1;0)", Z) {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 9),
            other => panic!("unexpected {other:?}"),
        }
        match Multisegment::parse("[0;2) x", Z) {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 6),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Multisegment::parse("0[0;1)", Z).is_err());
        assert!(Multisegment::parse("[0;1)+", Z).is_err());
    }

    #[test]
    fn json_round_trip() {
        let m = ms("2[0;2)+[1;3)", Z);
        let v = m.to_json();
        assert_eq!(
            v,
            serde_json::json!([{"origin":0,"length":2,"mult":2},{"origin":1,"length":3,"mult":1}])
        );
        assert_eq!(Multisegment::from_json(&v, Z).unwrap(), m);
    }

    #[test]
    fn periodic_detection() {
        assert!(ms("[0;1)+[1;1)", Z2).is_periodic());
        assert!(!ms("[0;1)", Z2).is_periodic());
        assert!(ms("2[0;3)+2[1;3)", Z2).is_periodic());
    }
}
