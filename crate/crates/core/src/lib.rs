//! Exact computation with finite-dimensional restricted Lie algebras over
//! prime fields: derivations, restricted cohomology, structural invariants
//! and exhaustive verification over small enumerated algebras.

pub mod algebra;
pub mod catalog;
pub mod cohomology;
pub mod derivations;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod structure;

pub use algebra::{AlgebraDocument, RestrictedLieAlgebra};
pub use derivations::{Derivation, DEFAULT_BUDGET};
pub use error::{Error, Result};
pub use linalg::{FieldMatrix, PrimeField, Subspace};
