//! Exact adjacency geometry of real symmetric matrices.
//!
//! Points are rational symmetric matrices, the distance between two of them
//! is the rank of their difference, and two points are adjacent when that
//! rank is one. The crate provides the geometry itself (lines, the distance
//! profile of a point along a line, adjacency chains), rational congruence
//! diagonalization, the bridge between `S_2` and three-dimensional Minkowski
//! space, and generators, verifiers and a classifier for adjacency
//! preserving maps `S_n → S_m`.
//!
//! All arithmetic is exact over the rationals.

pub mod error;
pub mod geometry;
pub mod linalg;
pub mod maps;
pub mod minkowski;
pub mod quadform;
pub mod random;
pub mod rat;
pub mod selftest;
pub mod text;

pub use error::{Error, ErrorKind, Result};
pub use linalg::{Mat, RankOneTerm, SymMat, Vector};
pub use rat::Rat;
