//! Exact linear algebra over ℚ(i) for super vector spaces.

pub mod hom;
pub mod linalg;
pub mod matrix;
pub mod mixed;
pub mod scalar;
pub mod subspace;

pub use hom::HomLayout;
pub use matrix::{kernel, GradedMatrix, Matrix};
pub use mixed::{check_mixed, check_mixed_subspaces, induced_complex_part, MixedData, MixedVerdict, MixedViolation};
pub use scalar::{GaussianRational, GQ};
pub use subspace::{complexify_vec, realify_vec, Field, GradedDim, GradedSubspace, Parity};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GsError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("parity error: {0}")]
    Parity(String),
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
}

/// Canonical echelon form of the span of `vectors` (complex coordinates).
pub fn echelon(ambient: GradedDim, vectors: impl IntoIterator<Item = Vec<GQ>>) -> Result<GradedSubspace, GsError> {
    GradedSubspace::span(ambient, Field::Complex, vectors)
}
