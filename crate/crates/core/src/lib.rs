//! Zelevinsky's involution and related dualities on multisegments, over the
//! integers and at roots of unity.
//!
//! The crate computes
//!
//! * Kashiwara operators on multisegments and the crystal graph
//!   ([`crystal`]),
//! * the involutions `sharp`, `flat` and `tau` by reversing crystal paths
//!   ([`involution`]),
//! * the action of the Chevalley generators and their adjoints on the PBW
//!   basis of the twisted Hall algebra ([`hallpbw`]),
//! * the canonical basis in PBW coordinates ([`canonical`]),
//!
//! and checks all of it against brute-force computations with explicit
//! nilpotent quiver representations over finite fields and the rationals
//! ([`quiverrep`]).

pub mod canonical;
pub mod crystal;
pub mod enumerate;
pub mod error;
pub mod field;
pub mod hallpbw;
pub mod involution;
pub mod laurent;
pub mod matrix;
pub mod multisegment;
pub mod partition;
pub mod quiverrep;
pub mod ring;
pub mod verify;

pub use error::{Error, Result};
pub use laurent::{LaurentPoly, RationalFunction};
pub use multisegment::{DegreeVector, Label, Multisegment, Segment};
pub use ring::VertexRing;

/// Environment variable overriding the resource guards on degrees.
pub const MAX_DEGREE_ENV: &str = "MSDUAL_MAX_DEGREE";

/// Resource bound: `default`, unless overridden by `MSDUAL_MAX_DEGREE`.
pub fn degree_bound(default: usize) -> usize {
    std::env::var(MAX_DEGREE_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(default)
}
