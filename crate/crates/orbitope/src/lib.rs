//! Packing and partitioning orbitopes for cyclic and symmetric column groups.
//!
//! An orbitope is the convex hull of the 0/1 matrices that are
//! lexicographically maximal within their orbit under a group permuting the
//! matrix columns. This crate covers the packing (at most one 1-entry per
//! row) and partitioning (exactly one) variants for the cyclic group `C_q`
//! and the full symmetric group `S_q`, and provides:
//!
//! * index arithmetic and the shifted-column / bar cut objects ([`index`]),
//! * lexicographic order, canonicalization and vertex enumeration ([`orbits`]),
//! * polynomial-time linear optimization oracles ([`optimize`]),
//! * linear-time exact separation of shifted column inequalities and of the
//!   cyclic constraint families ([`separation`]),
//! * generators for the complete and non-redundant linear descriptions,
//!   facet classification and the partitioning/packing projection
//!   ([`descriptions`], [`lpfile`]),
//! * exact brute-force verification oracles: integrality checks, affine
//!   rank, facet certification, total-unimodularity spot checks ([`verify`]),
//! * symmetry-broken graph-coloring model generation ([`coloring`]).
//!
//! All verification paths use exact rational arithmetic; the optimization
//! and separation kernels are generic over [`scalar::Scalar`] and also run
//! on `f64` for speed.

pub mod coloring;
pub mod descriptions;
mod error;
pub mod index;
pub mod lpfile;
pub mod optimize;
pub mod orbits;
pub mod scalar;
pub mod separation;
pub mod verify;

pub use error::Error;
pub type Result<T> = std::result::Result<T, Error>;

pub use index::{Bar, BinaryMatrix, CellIndex, DiagCoord, FractionalPoint, Group, RowMode, Sci, Shape, ShiftedColumn};
