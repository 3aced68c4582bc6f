//! Lie superalgebras realized inside `gl(V)`.

pub mod algebra;
pub mod clifford;
pub mod element;
pub mod forms;

pub use algebra::{generated_subalgebra, is_subalgebra, SuperAlgebraBasis};
pub use clifford::{clifford_rep, spin_w_algebra, CliffordRep};
pub use element::{bracket, GlElement};
pub use forms::{osp_algebra, p_algebra, BilinearForm};

use crate::gsalg::GsError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error(transparent)]
    Linear(#[from] GsError),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("parity error: {0}")]
    Parity(String),
    #[error("degenerate bilinear form: {0}")]
    Degenerate(String),
    #[error("invalid form: {0}")]
    InvalidForm(String),
    #[error("invalid signature: {0}")]
    Signature(String),
}
