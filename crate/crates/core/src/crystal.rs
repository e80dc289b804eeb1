//! Kashiwara operators on multisegments.
//!
//! Vertices of the crystal are multisegments; `f_tilde(m, i)` is computed
//! from the partial sums
//!
//! ```text
//! S_{k,i} = sum_{l >= k} (m_{(l;i-1]} - m_{(l;i]})
//! ```
//!
//! by taking the smallest `k0 >= 1` at which `S_{k,i}` is minimal, and
//! then either adding `(1;i]` (`k0 = 1`) or lengthening one `(k0-1;i-1]`
//! into `(k0;i]`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multisegment::Multisegment;
use crate::ring::VertexRing;

/// `S_{k,i}` for `k = 1, ..., L+1` where `L` is the largest length in `m`
/// (entry `k-1` of the returned vector). `S_{k,i} = 0` for `k > L`.
pub fn string_sums(m: &Multisegment, i: i64) -> Vec<i64> {
    let ring = m.ring();
    let max_len = m.max_length();
    let mut sums = vec![0i64; max_len + 1];
    let mut acc = 0i64;
    for l in (1..=max_len).rev() {
        acc += m.mult_head(l, ring.add(i, -1)) as i64 - m.mult_head(l, i) as i64;
        sums[l - 1] = acc;
    }
    sums
}

/// The minimal `k0 >= 1` with `S_{k0,i} = min_k S_{k,i}`.
fn k_zero(m: &Multisegment, i: i64) -> usize {
    let sums = string_sums(m, i);
    let min = *sums.iter().min().expect("at least one sum");
    sums.iter().position(|&s| s == min).expect("minimum attained") + 1
}

/// The Kashiwara operator `f_i`.
pub fn f_tilde(m: &Multisegment, i: i64) -> Multisegment {
    let ring = m.ring();
    let i = ring.norm(i);
    let k0 = k_zero(m, i);
    let mut out = m.clone();
    if k0 > 1 {
        // Minimality of k0 forces S_{k0-1} > S_{k0}, i.e. m_{(k0-1;i-1]} >= 1.
        let removed = out.remove_one_head(k0 - 1, ring.add(i, -1));
        assert!(removed, "f_tilde: missing segment ({};{}] in {m}", k0 - 1, ring.add(i, -1));
    }
    out.add_head(k0, i, 1);
    out
}

/// `m^-_{l,i}`: undo the move that created one `(l;i]`.
pub fn minus_move(m: &Multisegment, l: usize, i: i64) -> Option<Multisegment> {
    let ring = m.ring();
    if m.mult_head(l, i) == 0 {
        return None;
    }
    let mut out = m.clone();
    out.remove_one_head(l, i);
    if l > 1 {
        out.add_head(l - 1, ring.add(i, -1), 1);
    }
    Some(out)
}

/// `m^+_{l,i}`, or `None` when `l > 1` and `m` has no `(l-1;i-1]`.
pub fn plus_move(m: &Multisegment, l: usize, i: i64) -> Option<Multisegment> {
    let ring = m.ring();
    let mut out = m.clone();
    if l > 1 && !out.remove_one_head(l - 1, ring.add(i, -1)) {
        return None;
    }
    out.add_head(l, i, 1);
    Some(out)
}

/// Every `m'` with `f_tilde(m', i) = m`. Crystal theory says there is at
/// most one; exposed so that uniqueness can be checked.
pub fn e_tilde_candidates(m: &Multisegment, i: i64) -> Vec<Multisegment> {
    let ring = m.ring();
    let i = ring.norm(i);
    let lengths: BTreeSet<usize> =
        m.iter().filter(|(s, _)| s.head(ring) == i).map(|(s, _)| s.length).collect();
    lengths
        .into_iter()
        .filter_map(|l| minus_move(m, l, i))
        .filter(|cand| f_tilde(cand, i) == *m)
        .collect()
}

/// The Kashiwara operator `e_i`; `None` when `m` has no `i`-predecessor.
pub fn e_tilde(m: &Multisegment, i: i64) -> Option<Multisegment> {
    let ring = m.ring();
    let i = ring.norm(i);
    let mut lengths: Vec<usize> =
        m.iter().filter(|(s, _)| s.head(ring) == i).map(|(s, _)| s.length).collect();
    lengths.dedup();
    lengths
        .into_iter()
        .filter_map(|l| minus_move(m, l, i))
        .find(|cand| f_tilde(cand, i) == *m)
}

/// Number of times `e_i` can be applied to `m`.
pub fn epsilon(m: &Multisegment, i: i64) -> usize {
    let mut count = 0;
    let mut cur = m.clone();
    while let Some(prev) = e_tilde(&cur, i) {
        cur = prev;
        count += 1;
    }
    count
}

/// Residues at which `e_tilde` might be defined: heads of segments of `m`,
/// in the deterministic residue order of the ring.
pub fn active_residues(m: &Multisegment) -> Vec<i64> {
    let ring = m.ring();
    let mut heads: Vec<i64> = m.iter().map(|(s, _)| s.head(ring)).collect();
    heads.sort_by_key(|&i| ring.residue_order_key(i));
    heads.dedup();
    heads
}

/// A path from a highest-weight vertex up to some multisegment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrystalPath {
    /// Residues in the order they were removed by `e_tilde`, starting at
    /// the target vertex.
    pub removal: Vec<i64>,
    /// The highest-weight vertex reached.
    pub top: Multisegment,
}

impl CrystalPath {
    /// Residues `i_1, ..., i_k` with `f_{i_k} ... f_{i_1}(top) = target`.
    pub fn rebuild_word(&self) -> Vec<i64> {
        self.removal.iter().rev().copied().collect()
    }

    /// `rebuild_word` grouped into runs `(residue, power)`.
    pub fn rebuild_runs(&self) -> Vec<(i64, usize)> {
        let mut runs: Vec<(i64, usize)> = Vec::new();
        for i in self.rebuild_word() {
            match runs.last_mut() {
                Some((j, k)) if *j == i => *k += 1,
                _ => runs.push((i, 1)),
            }
        }
        runs
    }
}

/// Apply `f_tilde` along `word` starting at `start`.
pub fn apply_word(start: &Multisegment, word: &[i64]) -> Multisegment {
    word.iter().fold(start.clone(), |m, &i| f_tilde(&m, i))
}

/// Descend to a highest-weight vertex, always removing at the smallest
/// residue (ring order) where `e_tilde` is defined.
pub fn highest_weight_path(m: &Multisegment) -> CrystalPath {
    descend(m, |choices| choices[0])
}

/// Descend choosing residues with a caller-supplied rule; `choose` receives
/// the residues with positive `epsilon`, in ring order.
pub fn descend(m: &Multisegment, mut choose: impl FnMut(&[i64]) -> i64) -> CrystalPath {
    let mut removal = Vec::new();
    let mut cur = m.clone();
    loop {
        let steps: Vec<(i64, Multisegment)> = active_residues(&cur)
            .into_iter()
            .filter_map(|i| e_tilde(&cur, i).map(|prev| (i, prev)))
            .collect();
        if steps.is_empty() {
            return CrystalPath { removal, top: cur };
        }
        let residues: Vec<i64> = steps.iter().map(|s| s.0).collect();
        let pick = choose(&residues);
        let (i, prev) = steps.into_iter().find(|s| s.0 == pick).expect("choice among offered residues");
        removal.push(i);
        cur = prev;
    }
}

/// Descend with residues drawn uniformly from the available ones.
pub fn random_descent<R: Rng>(m: &Multisegment, rng: &mut R) -> CrystalPath {
    descend(m, |choices| *choices.choose(rng).expect("nonempty"))
}

/// Vertex `m` of the component of the empty multisegment reached from the
/// empty multisegment by `len` random `f_tilde` steps.
pub fn random_vertex<R: Rng>(ring: VertexRing, len: usize, rng: &mut R) -> Multisegment {
    let mut m = Multisegment::empty(ring);
    for _ in 0..len {
        let i = match ring {
            VertexRing::Cyclic(n) => rng.gen_range(0..n as i64),
            VertexRing::Integers => rng.gen_range(-3..=3),
        };
        m = f_tilde(&m, i);
    }
    m
}

/// `phi_i`: send each `(l;r]` to `(l;j_r]` over the integers, where
/// `j_r = r` for `r` in `0..n`, except that for `i = 0` the residue `n-1`
/// goes to `-1`.
pub fn embed_phi(m: &Multisegment, i: i64) -> Result<Multisegment> {
    let ring = m.ring();
    let n = ring.modulus().ok_or_else(|| {
        Error::RingMismatch("embed_phi expects a cyclic multisegment".into())
    })? as i64;
    let i = ring.norm(i);
    let lift = |r: i64| if i == 0 && r == n - 1 { -1 } else { r };
    let mut out = Multisegment::empty(VertexRing::Integers);
    for (s, k) in m.iter() {
        out.add_head(s.length, lift(s.head(ring)), k);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    /// The component of the empty multisegment.
    Empty,
    /// Every component (periodic seeds included).
    All,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub source: usize,
    pub residue: i64,
    pub target: usize,
}

/// A finite piece of the crystal graph: all vertices of total degree at most
/// `max_degree` reachable from the seeds, with every arrow among them.
#[derive(Clone, Debug)]
pub struct CrystalGraph {
    pub ring: VertexRing,
    pub max_degree: usize,
    pub vertices: Vec<Multisegment>,
    pub arrows: Vec<Arrow>,
}

/// Default resource guard for graph generation.
pub const DEFAULT_GRAPH_DEGREE_BOUND: usize = 10;

pub fn crystal_graph(ring: VertexRing, max_degree: usize, component: Component) -> Result<CrystalGraph> {
    let bound = crate::degree_bound(DEFAULT_GRAPH_DEGREE_BOUND);
    if max_degree > bound {
        return Err(Error::BoundExceeded { what: "max degree", value: max_degree, bound });
    }
    let residues: Vec<i64> = match ring {
        VertexRing::Cyclic(n) => (0..n as i64).collect(),
        VertexRing::Integers => {
            // Over the integers f_i(0) = (1;i] for every i; a finite window
            // of residues is needed to keep the graph finite.
            let r = max_degree as i64;
            (-r..=r).collect()
        }
    };
    let seeds: Vec<Multisegment> = match (ring, component) {
        (VertexRing::Cyclic(n), Component::All) => crate::enumerate::periodic_up_to(n, max_degree),
        _ => vec![Multisegment::empty(ring)],
    };
    let mut seen: BTreeSet<Multisegment> = seeds.iter().cloned().collect();
    let mut frontier: Vec<Multisegment> = seeds;
    let mut edges: Vec<(Multisegment, i64, Multisegment)> = Vec::new();
    while !frontier.is_empty() {
        let found: Vec<(Multisegment, i64, Multisegment)> = frontier
            .par_iter()
            .flat_map_iter(|m| {
                let residues = &residues;
                residues
                    .iter()
                    .filter(move |_| m.total_degree() < max_degree)
                    .map(move |&i| (m.clone(), i, f_tilde(m, i)))
            })
            .collect();
        let mut next = Vec::new();
        for (src, i, dst) in found {
            if seen.insert(dst.clone()) {
                next.push(dst.clone());
            }
            edges.push((src, i, dst));
        }
        next.sort();
        frontier = next;
    }
    let vertices: Vec<Multisegment> = {
        let mut v: Vec<Multisegment> = seen.into_iter().collect();
        v.sort_by(|a, b| a.total_degree().cmp(&b.total_degree()).then(a.cmp(b)));
        v
    };
    let index: BTreeMap<&Multisegment, usize> = vertices.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let mut arrows: Vec<Arrow> = edges
        .iter()
        .map(|(s, i, t)| Arrow { source: index[s], residue: *i, target: index[t] })
        .collect();
    arrows.sort_by_key(|a| (a.source, ring.residue_order_key(a.residue), a.target));
    arrows.dedup();
    Ok(CrystalGraph { ring, max_degree, vertices, arrows })
}

impl CrystalGraph {
    /// Number of vertices of each total degree `0..=max_degree`.
    pub fn counts_by_degree(&self) -> Vec<usize> {
        let mut counts = vec![0; self.max_degree + 1];
        for m in &self.vertices {
            counts[m.total_degree()] += 1;
        }
        counts
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph crystal {\n");
        for m in &self.vertices {
            out.push_str(&format!("  \"{m}\";\n"));
        }
        for a in &self.arrows {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                self.vertices[a.source], self.vertices[a.target], a.residue
            ));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let arrows: Vec<serde_json::Value> = self
            .arrows
            .iter()
            .map(|a| {
                serde_json::json!({
                    "source": self.vertices[a.source].to_string(),
                    "residue": a.residue,
                    "target": self.vertices[a.target].to_string(),
                })
            })
            .collect();
        serde_json::json!({
            "ring": self.ring.to_string(),
            "max_degree": self.max_degree,
            "vertices": self.vertices.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            "arrows": arrows,
        })
    }
}

/// Breadth-first distance helper used by tests: all vertices reachable
/// from the empty multisegment within `steps` applications of `f_tilde`.
pub fn reachable(ring: VertexRing, residues: &[i64], steps: usize) -> BTreeSet<Multisegment> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([(Multisegment::empty(ring), 0usize)]);
    seen.insert(Multisegment::empty(ring));
    while let Some((m, d)) = queue.pop_front() {
        if d == steps {
            continue;
        }
        for &i in residues {
            let next = f_tilde(&m, i);
            if seen.insert(next.clone()) {
                queue.push_back((next, d + 1));
            }
        }
    }
    seen
}
