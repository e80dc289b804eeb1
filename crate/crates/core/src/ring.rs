use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The vertex set of the quiver: the integers (type A-infinity) or the
/// residues modulo `n` (the cyclic quiver with `n` vertices).
///
/// Vertex labels are plain `i64`s; in the cyclic case they are always
/// canonicalized to `0..n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VertexRing {
    Integers,
    Cyclic(u32),
}

impl VertexRing {
    pub fn cyclic(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidRing(format!("modulus must be at least 2, got {n}")));
        }
        Ok(VertexRing::Cyclic(n))
    }

    pub fn modulus(&self) -> Option<u32> {
        match self {
            VertexRing::Integers => None,
            VertexRing::Cyclic(n) => Some(*n),
        }
    }

    pub fn is_cyclic(&self) -> bool {
        matches!(self, VertexRing::Cyclic(_))
    }

    #[inline]
    pub fn norm(&self, i: i64) -> i64 {
        match self {
            VertexRing::Integers => i,
            VertexRing::Cyclic(n) => i.rem_euclid(*n as i64),
        }
    }

    #[inline]
    pub fn add(&self, i: i64, k: i64) -> i64 {
        self.norm(i + k)
    }

    #[inline]
    pub fn neg(&self, i: i64) -> i64 {
        self.norm(-i)
    }

    /// All residues, for cyclic rings.
    pub fn residues(&self) -> Option<Vec<i64>> {
        self.modulus().map(|n| (0..n as i64).collect())
    }

    /// Sort key for residues: ascending for cyclic rings, and
    /// `0, 1, -1, 2, -2, ...` for the integers.
    pub fn residue_order_key(&self, i: i64) -> (u64, bool) {
        match self {
            VertexRing::Cyclic(_) => (i as u64, false),
            VertexRing::Integers => (i.unsigned_abs(), i < 0),
        }
    }
}

impl fmt::Display for VertexRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexRing::Integers => write!(f, "z"),
            VertexRing::Cyclic(n) => write!(f, "zmod:{n}"),
        }
    }
}

impl FromStr for VertexRing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("z") {
            return Ok(VertexRing::Integers);
        }
        if let Some(rest) = s.strip_prefix("zmod:") {
            let n: u32 = rest
                .parse()
                .map_err(|_| Error::InvalidRing(format!("bad modulus in {s:?}")))?;
            return VertexRing::cyclic(n);
        }
        Err(Error::InvalidRing(format!("expected `z` or `zmod:N`, got {s:?}")))
    }
}
