//! Exact dense linear algebra over the rationals and prime fields.

pub mod field;
pub mod matrix;

pub use field::{format_rational, is_prime_u64, parse_rational, Field, PrimeField, Rationals, DEFAULT_PRIME};
pub use matrix::{determinant, solve, FieldMatrix, IncrementalBasis};
