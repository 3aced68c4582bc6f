//! Calculus on real superdomains `ℝ^{n|m}`: polynomial superfunctions,
//! vector fields, numerical flows, Killing solvers and odd-parameter
//! families.
//!
//! Odd derivatives act from the left: `∂_{η_j} η^I = (−1)^{#{i ∈ I : i < j}} η^{I∖j}`.

pub mod family;
pub mod field;
pub mod flow;
pub mod killing;
pub mod numeric;
pub mod poly;

pub use family::{
    commutes_with_frame, family_decompose, family_is_automorphism, family_recompose, frame_matrix,
    is_parallelization_automorphism, Family, FamilyDecomposition, PolyMatrix,
};
pub use field::{is_even_real_vf, vf_apply, vf_bracket, SuperVectorField};
pub use flow::{
    commuting_residual, flow, flow_equation_residual, flow_point, flow_with, group_law_residual,
    identity_point, lie_derivative_check, reality_residual, FlowOptions, FlowResult, Trajectory,
};
pub use killing::{killing_metric, killing_parallelization, KillingSolution};
pub use numeric::GrassmannNumber;
pub use poly::{gp_add, gp_mul, gp_partial, gp_scale, GrassmannPoly, Monomial};

use thiserror::Error;

use crate::gsalg::GsError;
use crate::liesuper::LieError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CalcError {
    #[error(transparent)]
    Linear(#[from] GsError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("domain mismatch: {0}")]
    Domain(String),
    #[error("parity error: {0}")]
    Parity(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("not an even real vector field: {0}")]
    NotEvenReal(String),
    #[error("degenerate frame: {0}")]
    DegenerateFrame(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("flow escape: {0}")]
    Escape(String),
}
