//! Volume rigidity of simplicial complexes.
//!
//! A `d`-dimensional framework assigns points of `F^d` to the vertices of a
//! simplicial complex and measures the signed volume of every `d`-face. This
//! crate computes the generic rank of that measurement map, exact and
//! randomized, together with the combinatorial tools around it: homology,
//! the Grassmannian matroid and its orientation criterion, exterior
//! algebraic shifting, face-number bounds and global rigidity certificates.

pub mod bounds;
pub mod complex;
pub mod error;
pub mod global;
pub mod grassmann;
pub mod homology;
pub mod linalg;
pub mod orientation;
pub mod rigidity;
pub mod shifting;

pub use complex::{simplex, ComplexJson, FVector, Simplex, SimplicialComplex};
pub use error::{Error, Result};
pub use rigidity::{GenericOptions, RigidityVerdict};
