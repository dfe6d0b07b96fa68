//! Invariants of F-cyclic F-crystals at finite level.
//!
//! An F-cyclic F-crystal is determined by a permutation `π` of `{1..r}` and a
//! sequence of Hodge slopes `E = (e_1, .., e_r)`. This crate computes, for every
//! level `m`, the dimension `γ(m)` of the level-`m` automorphism group scheme and
//! the exponent `b(m)` for which `p^b(m)` counts the connected components of the
//! level-`m` endomorphism group scheme.
//!
//! Two independent routes are provided:
//!
//! - [`digraph`] builds the weighted level digraph of every orbit of `π × π`
//!   vertex by vertex and counts its free linear and circular components.
//! - [`circseq`] evaluates the closed combinatorial formulas on the circular
//!   slope-difference sequence of each orbit (free linear segment census and
//!   circular level).
//!
//! [`crystal`] assembles both into per-crystal reports, together with Newton
//! slopes, minimality and monotonicity diagnostics.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod circseq;
pub mod crystal;
pub mod digraph;
mod error;
pub mod permutation;

pub use circseq::{CircularSeq, NormalizedSeq, SegmentCensus};
pub use crystal::{
    FCyclicCrystal, GammaReport, MonotonicityReport, NewtonSlope, OrbitData, OrbitMismatch,
    VerificationReport,
};
pub use digraph::{oracle_counts, ComponentStats, LevelDigraph, PairGraph, Vertex};
pub use num_rational::Ratio;
pub use error::{Error, ParseError, ParseErrorKind};
pub use permutation::{Orbit, Permutation};

pub type Result<T, E = Error> = core::result::Result<T, E>;
