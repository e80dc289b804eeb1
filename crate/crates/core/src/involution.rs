//! The involutions `sharp`, `flat` and `tau` on multisegments.
//!
//! `sharp` reads a crystal path from the empty multisegment up to `m` and
//! replays it with every residue negated. `tau = sharp . flat`.

use rand::Rng;

use crate::crystal::{apply_word, descend, f_tilde, highest_weight_path, minus_move, random_descent, CrystalPath};
use crate::error::{Error, Result};
use crate::multisegment::{Multisegment, Segment};
use crate::ring::VertexRing;

pub use crate::partition::{mullineux, Partition};

fn check_vertex(m: &Multisegment) -> Result<()> {
    if m.ring().is_cyclic() && !m.is_aperiodic()? {
        return Err(Error::NonAperiodic(m.to_string()));
    }
    Ok(())
}

/// Replay a path from the empty multisegment with negated residues.
pub fn sharp_along(m: &Multisegment, path: &CrystalPath) -> Result<Multisegment> {
    if !path.top.is_empty() {
        return Err(Error::NonAperiodic(m.to_string()));
    }
    let ring = m.ring();
    let word: Vec<i64> = path.rebuild_word().into_iter().map(|i| ring.neg(i)).collect();
    Ok(apply_word(&Multisegment::empty(ring), &word))
}

pub fn sharp(m: &Multisegment) -> Result<Multisegment> {
    check_vertex(m)?;
    sharp_along(m, &highest_weight_path(m))
}

/// `sharp` computed along a randomly chosen descent.
pub fn sharp_random<R: Rng>(m: &Multisegment, rng: &mut R) -> Result<Multisegment> {
    check_vertex(m)?;
    sharp_along(m, &random_descent(m, rng))
}

/// `sharp` computed along the descent that always removes the largest
/// available residue.
pub fn sharp_reverse_order(m: &Multisegment) -> Result<Multisegment> {
    check_vertex(m)?;
    sharp_along(m, &descend(m, |choices| *choices.last().expect("nonempty")))
}

pub fn flat(m: &Multisegment) -> Multisegment {
    m.flat()
}

/// `tau = sharp . flat`, cross-checked against `flat . sharp`.
pub fn tau(m: &Multisegment) -> Result<Multisegment> {
    let left = sharp(&m.flat())?;
    let right = sharp(m)?.flat();
    if left != right {
        return Err(Error::InvariantViolation(format!(
            "sharp(flat({m})) = {left} but flat(sharp({m})) = {right}"
        )));
    }
    Ok(left)
}

/// The descent that removes, at each step, a segment `(l;i]` with `i`
/// minimal and then `l` minimal. Fails if that move is not a crystal arrow.
pub fn mw_path(m: &Multisegment) -> Result<CrystalPath> {
    if m.ring().is_cyclic() {
        return Err(Error::RingMismatch("the Moeglin-Waldspurger path is defined over the integers only".into()));
    }
    let ring = m.ring();
    let mut removal = Vec::new();
    let mut cur = m.clone();
    while let Some((seg, _)) = cur.iter().min_by_key(|(s, _)| (s.head(ring), s.length)) {
        let (l, i) = (seg.length, seg.head(ring));
        let prev = minus_move(&cur, l, i).expect("segment is present");
        if f_tilde(&prev, i) != cur {
            return Err(Error::InvariantViolation(format!(
                "removing ({l};{i}] from {cur} is not a crystal arrow"
            )));
        }
        removal.push(i);
        cur = prev;
    }
    Ok(CrystalPath { removal, top: cur })
}

/// Zelevinsky's involution computed along the Moeglin-Waldspurger path.
pub fn mw_dual(m: &Multisegment) -> Result<Multisegment> {
    let f = m.flat();
    sharp_along(&f, &mw_path(&f)?)
}

/// Row `r` (counted from 1) of `lambda` becomes `[1-r; lambda_r)`.
pub fn partition_to_multisegment(lambda: &Partition, ring: VertexRing) -> Multisegment {
    Multisegment::from_segments(
        ring,
        lambda.parts().iter().enumerate().map(|(r, &len)| (Segment::new(ring, -(r as i64), len), 1)),
    )
}

/// Inverse of [`partition_to_multisegment`] over the integers: `None` if
/// `m` is not the image of a partition.
pub fn multisegment_to_partition(m: &Multisegment) -> Option<Partition> {
    if m.ring().is_cyclic() {
        return None;
    }
    let mut rows: Vec<(i64, usize)> = Vec::new();
    for (s, k) in m.iter() {
        if k != 1 {
            return None;
        }
        rows.push((-s.origin, s.length));
    }
    rows.sort_unstable();
    let lambda = Partition::new(rows.iter().map(|r| r.1).collect());
    let consistent = rows.iter().enumerate().all(|(r, &(o, _))| o == r as i64)
        && rows.iter().map(|r| r.1).collect::<Vec<_>>() == lambda.parts();
    consistent.then_some(lambda)
}
