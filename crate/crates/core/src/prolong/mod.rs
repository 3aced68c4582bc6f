//! Prolongation towers, finite type, `H^{0,2}` and admissibility.

pub mod antisym;
pub mod real;
pub mod tower;

pub use antisym::{
    first_prolongation, first_prolongation_in_gl, h02_dimension, partial_matrix, super_antisymmetrize, AntisymmetricMap,
    Lambda2Layout,
};
pub use real::{admissibility_of, hom_mu_real, is_admissible, Admissibility, AdmissibleVerdict, LevelMixed, DEFAULT_KMAX};
pub use tower::{finite_type, finite_type_of, kth_prolongation, FiniteType, ProlongationTower};

use crate::gsalg::{GsError, MixedViolation};
use crate::liesuper::LieError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProlongError {
    #[error(transparent)]
    Linear(#[from] GsError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("invalid mixed data on V: {0}")]
    InvalidMixed(MixedViolation),
}
