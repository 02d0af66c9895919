//! Exact linear algebra over `GF(p)` and `Q`.
//!
//! Vectors are plain `Vec<FieldElem>`; matrices act on column vectors.

mod field;
mod matrix;
mod subspace;

pub use field::{parse_scalar, Field, FieldElem, MAX_PRIME};
pub use matrix::Matrix;
pub use subspace::Subspace;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("unsupported field `{0}` (GF(p) with prime p <= 97, or Q)")]
    UnsupportedField(String),
    #[error("malformed scalar `{0}`")]
    BadScalar(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation needs a finite field")]
    InfiniteField,
    #[error("vector is not in the subspace")]
    NotInSubspace,
    #[error("enumeration too large to materialize")]
    TooLarge,
}

/// Zero vector of length `n`.
pub fn zero_vector(field: Field, n: usize) -> Vec<FieldElem> {
    vec![field.zero(); n]
}

/// Standard basis vector `e_i` of length `n`.
pub fn unit_vector(field: Field, n: usize, i: usize) -> Vec<FieldElem> {
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}
