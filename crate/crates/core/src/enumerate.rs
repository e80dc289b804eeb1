//! Exhaustive enumeration of multisegments, used by the oracles, the
//! canonical-basis tables and the verification suites.

use crate::multisegment::{DegreeVector, Multisegment, Segment};
use crate::ring::VertexRing;

/// Every multisegment whose degree vector is exactly `d`.
pub fn with_degree(ring: VertexRing, d: &DegreeVector) -> Vec<Multisegment> {
    if !d.is_nonnegative() {
        return Vec::new();
    }
    let total = d.total() as usize;
    let candidates: Vec<(Segment, DegreeVector)> = candidate_segments(ring, d, total)
        .into_iter()
        .filter_map(|s| {
            let cells = Multisegment::from_segments(ring, [(s, 1)]).degree();
            fits(&cells, d).then_some((s, cells))
        })
        .collect();
    let mut out = Vec::new();
    let mut current = Multisegment::empty(ring);
    fill(&candidates, 0, d.clone(), &mut current, &mut out);
    out
}

fn candidate_segments(ring: VertexRing, d: &DegreeVector, total: usize) -> Vec<Segment> {
    let mut out = Vec::new();
    for origin in d.support() {
        for length in 1..=total {
            out.push(Segment::new(ring, origin, length));
        }
    }
    out
}

fn fits(cells: &DegreeVector, d: &DegreeVector) -> bool {
    cells.iter().all(|(i, k)| k <= d.get(i))
}

fn fill(
    candidates: &[(Segment, DegreeVector)],
    idx: usize,
    remaining: DegreeVector,
    current: &mut Multisegment,
    out: &mut Vec<Multisegment>,
) {
    if remaining.total() == 0 {
        out.push(current.clone());
        return;
    }
    if idx == candidates.len() {
        return;
    }
    // The smallest vertex still uncovered must be covered by a segment
    // starting there; candidates are sorted by origin, so once we pass it
    // there is no way back.
    let (seg, cells) = &candidates[idx];
    let first_open = remaining.support()[0];
    if seg.origin > first_open && !current.ring().is_cyclic() {
        return;
    }
    let mut rem = remaining;
    let mut added = 0usize;
    loop {
        fill(candidates, idx + 1, rem.clone(), current, out);
        if !fits(cells, &rem) {
            break;
        }
        rem = rem.minus(cells);
        added += 1;
        current.add(*seg, 1);
    }
    for _ in 0..added {
        current.remove_one(*seg);
    }
}

/// All degree vectors over `zmod:n` with the given total.
pub fn cyclic_degree_vectors(n: u32, total: usize) -> Vec<DegreeVector> {
    let mut out = Vec::new();
    let mut dims = vec![0i64; n as usize];
    compositions(&mut dims, 0, total as i64, &mut out);
    out
}

fn compositions(dims: &mut Vec<i64>, pos: usize, left: i64, out: &mut Vec<DegreeVector>) {
    if pos + 1 == dims.len() {
        dims[pos] = left;
        out.push(DegreeVector::from_dense(dims));
        return;
    }
    for k in 0..=left {
        dims[pos] = k;
        compositions(dims, pos + 1, left - k, out);
    }
}

/// All degree vectors supported in `lo..=hi` with the given total.
pub fn window_degree_vectors(lo: i64, hi: i64, total: usize) -> Vec<DegreeVector> {
    let width = (hi - lo + 1) as usize;
    let mut out = Vec::new();
    let mut dims = vec![0i64; width];
    compositions(&mut dims, 0, total as i64, &mut out);
    out.into_iter()
        .map(|d| DegreeVector::from_entries(d.iter().map(|(i, k)| (i + lo, k))))
        .collect()
}

/// All multisegments over `zmod:n` of the given total degree.
pub fn cyclic_of_total(n: u32, total: usize) -> Vec<Multisegment> {
    let ring = VertexRing::Cyclic(n);
    cyclic_degree_vectors(n, total)
        .iter()
        .flat_map(|d| with_degree(ring, d))
        .collect()
}

/// All multisegments over `zmod:n` of total degree at most `max_total`.
pub fn cyclic_up_to(n: u32, max_total: usize) -> Vec<Multisegment> {
    (0..=max_total).flat_map(|t| cyclic_of_total(n, t)).collect()
}

/// Aperiodic multisegments over `zmod:n` of total degree at most `max_total`.
pub fn aperiodic_up_to(n: u32, max_total: usize) -> Vec<Multisegment> {
    cyclic_up_to(n, max_total)
        .into_iter()
        .filter(|m| m.is_aperiodic().unwrap_or(false))
        .collect()
}

/// Integer multisegments of the given total degree with every content in
/// `lo..=hi`.
pub fn window_of_total(lo: i64, hi: i64, total: usize) -> Vec<Multisegment> {
    window_degree_vectors(lo, hi, total)
        .iter()
        .flat_map(|d| with_degree(VertexRing::Integers, d))
        .collect()
}

/// Integer multisegments of total degree at most `max_total` with contents
/// in `0..max_total`. Up to translation this covers every multisegment whose
/// contents span at most `max_total` consecutive integers.
pub fn integer_up_to(max_total: usize) -> Vec<Multisegment> {
    let hi = max_total.max(1) as i64 - 1;
    (0..=max_total).flat_map(|t| window_of_total(0, hi, t)).collect()
}

/// Multisegments of the given ring and maximal total degree; integer
/// multisegments are restricted as in [`integer_up_to`].
pub fn up_to(ring: VertexRing, max_total: usize) -> Vec<Multisegment> {
    match ring {
        VertexRing::Integers => integer_up_to(max_total),
        VertexRing::Cyclic(n) => cyclic_up_to(n, max_total),
    }
}

/// Labels of the crystal component of the empty multisegment, up to a
/// total degree: aperiodic multisegments over cyclic rings, all (windowed)
/// multisegments over the integers.
pub fn regular_up_to(ring: VertexRing, max_total: usize) -> Vec<Multisegment> {
    match ring {
        VertexRing::Integers => integer_up_to(max_total),
        VertexRing::Cyclic(n) => aperiodic_up_to(n, max_total),
    }
}

/// Periodic multisegments over `zmod:n` of total degree at most `max_total`.
pub fn periodic_up_to(n: u32, max_total: usize) -> Vec<Multisegment> {
    let ring = VertexRing::Cyclic(n);
    let per_layer = n as usize;
    let mut out = Vec::new();
    // A periodic multisegment is a multiset of full "layers": n segments of
    // one length at every residue. Its degree is n * (sum of layer lengths).
    let max_sum = max_total / per_layer;
    let mut layers: Vec<usize> = Vec::new();
    periodic_layers(max_sum, max_sum, &mut layers, &mut |ls| {
        let mut m = Multisegment::empty(ring);
        for &l in ls {
            for r in 0..n as i64 {
                m.add(Segment::new(ring, r, l), 1);
            }
        }
        out.push(m);
    });
    out
}

fn periodic_layers(
    budget: usize,
    max_part: usize,
    layers: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    emit(layers);
    for l in (1..=max_part.min(budget)).rev() {
        layers.push(l);
        periodic_layers(budget - l, l, layers, emit);
        layers.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// Naive count: choose multiplicities for every segment independently.
    fn naive_cyclic_count(n: u32, total: usize) -> usize {
        let ring = VertexRing::Cyclic(n);
        let segs: Vec<Segment> = (0..n as i64)
            .flat_map(|o| (1..=total).map(move |l| Segment::new(ring, o, l)))
            .collect();
        fn go(segs: &[Segment], left: usize) -> usize {
            match segs.split_first() {
                None => (left == 0) as usize,
                Some((s, rest)) => (0..=left / s.length).map(|k| go(rest, left - k * s.length)).sum(),
            }
        }
        go(&segs, total)
    }

    #[test]
    fn cyclic_counts_match_naive() {
        for n in 2..=3 {
            for t in 0..=5 {
                let all = cyclic_of_total(n, t);
                let distinct: BTreeSet<_> = all.iter().cloned().collect();
                assert_eq!(distinct.len(), all.len());
                assert_eq!(all.len(), naive_cyclic_count(n, t), "n={n} t={t}");
                assert!(all.iter().all(|m| m.total_degree() == t));
            }
        }
    }

    #[test]
    fn aperiodic_counts_for_three() {
        let counts: Vec<usize> =
            (0..=3).map(|t| cyclic_of_total(3, t).iter().filter(|m| m.is_aperiodic().unwrap()).count()).collect();
        assert_eq!(counts, vec![1, 3, 9, 21]);
    }

    #[test]
    fn with_degree_integer() {
        let d = DegreeVector::from_entries([(0, 1), (1, 1)]);
        let all = with_degree(VertexRing::Integers, &d);
        assert_eq!(all.len(), 2);
    }

    #[test]
    fn periodic_enumeration() {
        let p = periodic_up_to(2, 4);
        // empty, [0;1)+[1;1), 2x that, [0;2)+[1;2)
        assert_eq!(p.len(), 4);
        assert!(p.iter().all(|m| m.is_periodic()));
    }
}
