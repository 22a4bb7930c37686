//! Matroid computations on the lattice-of-cyclic-flats representation.
//!
//! The central type is [`Matroid`], stored as its full lattice of cyclic flats
//! with ranks. On top of it sit the t-expansion operation ([`expansion`]),
//! enumerative invariants ([`invariants`]), Tutte and vertical connectivity
//! ([`connectivity`]), branch-width with tangle certificates ([`branchwidth`]),
//! and positroid-order and transversal-presentation checks ([`classes`]).

#![forbid(unsafe_code)]

pub mod branchwidth;
pub mod catalog;
pub mod classes;
pub mod connectivity;
mod error;
pub mod expansion;
pub mod invariants;
pub mod mask;
pub mod matroid;
pub mod random;

pub use error::{AxiomViolation, Error, Result};
pub use mask::SubsetMask;
pub use matroid::{validate_axioms, CyclicFlat, GroundSet, Matroid};
