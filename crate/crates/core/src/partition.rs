//! Partitions, conjugation, and the Mullineux map computed from rim
//! stripping. The Mullineux oracle uses nothing from the crystal code.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition((1..=width).map(|c| self.0.iter().filter(|&&p| p >= c).count()).collect())
    }

    /// No part is repeated `e` or more times.
    pub fn is_regular(&self, e: usize) -> bool {
        self.0.chunk_by(|a, b| a == b).all(|run| run.len() < e)
    }

    /// Every partition of `m`, in reverse lexicographic order.
    pub fn all_of(m: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        partitions_rec(m, m, &mut cur, &mut out);
        out
    }

    /// The `e`-regular partitions of `m`.
    pub fn regular_of(m: usize, e: usize) -> Vec<Partition> {
        Self::all_of(m).into_iter().filter(|p| p.is_regular(e)).collect()
    }

    /// Nodes of the rim, from the end of the first row to the start of the
    /// last row, as `(row, column)`.
    fn rim(&self) -> Vec<(usize, usize)> {
        let mut nodes = Vec::new();
        for (r, &len) in self.0.iter().enumerate() {
            let below = self.0.get(r + 1).copied().unwrap_or(0);
            let stop = below.saturating_sub(1);
            for c in (stop..len).rev() {
                nodes.push((r, c));
            }
        }
        nodes
    }

    /// The `e`-rim: consecutive pieces of `e` rim nodes, each piece
    /// starting at the end of the row below the one where the previous
    /// piece stopped; the last piece may be shorter.
    pub fn e_rim(&self, e: usize) -> Vec<(usize, usize)> {
        let rim = self.rim();
        let mut out = Vec::new();
        let mut pos = 0;
        while pos < rim.len() {
            let piece = &rim[pos..(pos + e).min(rim.len())];
            out.extend_from_slice(piece);
            let last_row = piece.last().expect("nonempty piece").0;
            match rim.iter().position(|&(r, _)| r == last_row + 1) {
                Some(next) => pos = next,
                None => break,
            }
        }
        out
    }

    fn without(&self, nodes: &[(usize, usize)]) -> Partition {
        let mut parts = self.0.clone();
        for &(r, _) in nodes {
            parts[r] -= 1;
        }
        Partition::new(parts)
    }

    /// Columns `(|e-rim|, number of rows)` of the successive partitions
    /// obtained by stripping `e`-rims.
    pub fn mullineux_symbol(&self, e: usize) -> Vec<(usize, usize)> {
        let mut symbol = Vec::new();
        let mut cur = self.clone();
        while !cur.is_empty() {
            let rim = cur.e_rim(e);
            symbol.push((rim.len(), cur.len()));
            cur = cur.without(&rim);
        }
        symbol
    }
}

fn partitions_rec(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if left == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    for p in (1..=max.min(left)).rev() {
        cur.push(p);
        partitions_rec(left - p, p, cur, out);
        cur.pop();
    }
}

/// Rows `(A, R)` become `(A, A - R + [e does not divide A])`.
fn conjugate_symbol(symbol: &[(usize, usize)], e: usize) -> Vec<(usize, usize)> {
    symbol
        .iter()
        .map(|&(a, r)| (a, a + usize::from(a % e != 0) - r))
        .collect()
}

/// The Mullineux image of an `e`-regular partition: the `e`-regular
/// partition of the same size whose symbol is the conjugate symbol.
pub fn mullineux(lambda: &Partition, e: usize) -> Result<Partition> {
    if e < 2 {
        return Err(Error::InvalidInput(format!("Mullineux map needs e >= 2, got {e}")));
    }
    if !lambda.is_regular(e) {
        return Err(Error::NotRegular(lambda.to_string(), e as u32));
    }
    let target = conjugate_symbol(&lambda.mullineux_symbol(e), e);
    let found: Vec<Partition> = Partition::regular_of(lambda.size(), e)
        .into_iter()
        .filter(|mu| mu.mullineux_symbol(e) == target)
        .collect();
    match found.as_slice() {
        [mu] => Ok(mu.clone()),
        _ => Err(Error::InvariantViolation(format!(
            "{} partitions have the conjugate symbol of {lambda} (e = {e})",
            found.len()
        ))),
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        if body.trim().is_empty() {
            return Ok(Partition::default());
        }
        let parts = body
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::InvalidInput(format!("bad partition {s:?}: {e}")))?;
        Ok(Partition::new(parts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn counts_and_conjugates() {
        let counts: Vec<usize> = (0..=8).map(|m| Partition::all_of(m).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        for m in 0..=8 {
            for lam in Partition::all_of(m) {
                assert_eq!(lam.conjugate().conjugate(), lam);
            }
        }
    }

    #[test]
    fn regularity() {
        assert!(p(&[2, 1]).is_regular(2));
        assert!(!p(&[1, 1]).is_regular(2));
        assert!(p(&[1, 1]).is_regular(3));
        // the number of e-regular partitions equals the number with no part divisible by e
        for m in 0..=8 {
            for e in 2..=3 {
                let no_multiple = Partition::all_of(m).iter().filter(|l| l.parts().iter().all(|x| x % e != 0)).count();
                assert_eq!(Partition::regular_of(m, e).len(), no_multiple);
            }
        }
    }

    #[test]
    fn e_rims() {
        // (2,1) with e = 3: the whole rim
        assert_eq!(p(&[2, 1]).e_rim(3), vec![(0, 1), (0, 0), (1, 0)]);
        // (3,1) with e = 2: (0,2),(0,1) then jump to row 1
        assert_eq!(p(&[3, 1]).e_rim(2), vec![(0, 2), (0, 1), (1, 0)]);
        assert_eq!(p(&[2, 1]).mullineux_symbol(3), vec![(3, 2)]);
    }

    #[test]
    fn mullineux_small() {
        assert_eq!(mullineux(&p(&[1]), 2).unwrap(), p(&[1]));
        assert_eq!(mullineux(&p(&[1]), 5).unwrap(), p(&[1]));
        // for e = 2 and size 2 the only 2-regular partition is (2)
        assert_eq!(mullineux(&p(&[2]), 2).unwrap(), p(&[2]));
        // in characteristic 3, sign tensored with D^(2,1) is the trivial module D^(3)
        assert_eq!(mullineux(&p(&[2, 1]), 3).unwrap(), p(&[3]));
        assert!(mullineux(&p(&[1, 1]), 2).is_err());
    }

    #[test]
    fn mullineux_is_involution() {
        for e in 2..=4 {
            for m in 0..=9 {
                for lam in Partition::regular_of(m, e) {
                    let img = mullineux(&lam, e).unwrap();
                    assert_eq!(img.size(), m);
                    assert_eq!(mullineux(&img, e).unwrap(), lam, "e={e} lambda={lam}");
                }
            }
        }
    }

    #[test]
    fn large_e_is_conjugation() {
        // when e exceeds the size every partition is regular and the map is conjugation
        for m in 0..=6 {
            for lam in Partition::all_of(m) {
                assert_eq!(mullineux(&lam, m + 2).unwrap(), lam.conjugate());
            }
        }
    }

    #[test]
    fn parse_and_print() {
        assert_eq!("(3,1,1)".parse::<Partition>().unwrap(), p(&[3, 1, 1]));
        assert_eq!("2,1".parse::<Partition>().unwrap().to_string(), "(2,1)");
        assert!("(a)".parse::<Partition>().is_err());
    }
}
