//! Exact combinatorics of the decomposition of the p-th exterior power of
//! C^m tensor C^n into conjugate pairs of general-linear irreducibles.
//!
//! The central fact, checked here in exact big-rational arithmetic, is that
//! two very different expressions define the same probability law on p-box
//! diagrams inside the m-row, n-column rectangle: the product of the two
//! factor dimensions over C(mn, p), and the standard-tableau count
//! f^lambda f^{complement(lambda)} / f^rectangle. The crate provides
//!
//! - partitions, hooks, contents, complements in a rectangle ([`partition`]);
//! - tableaux, a column-complement bijection, and a uniform random standard
//!   tableau sampler ([`tableau`]);
//! - hook-length and hook-content dimension formulas ([`dims`]);
//! - the probability law, three samplers of it, and comparison statistics
//!   ([`measure`]);
//! - symmetric-group character identities for the same module ([`character`]);
//! - rescaled-profile statistics for limit-shape experiments ([`shape`]).
//!
//! All theorem-level comparisons are exact; floating point appears only in
//! reported statistics (standard deviations, chi-square, float companions of
//! exact ratios).

#![forbid(unsafe_code)]

pub mod character;
pub mod dims;
pub mod error;
pub mod measure;
pub mod partition;
pub mod rng;
pub mod shape;
pub mod tableau;

pub use error::{Error, Result};
pub use partition::{Cell, Partition, Rectangle};
