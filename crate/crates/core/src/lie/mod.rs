//! Linear algebra for SE₂(3), its Lie algebra, and the operator family the
//! filter is assembled from.
//!
//! Algebra elements are coordinatized as 9-vectors ordered
//! `(ξ_R, ξ_v, ξ_x)`: rotation, velocity, position. Every block matrix in
//! this crate uses that ordering.

mod operators;
mod se23;
pub mod so3;

use nalgebra::{SMatrix, SVector};
use thiserror::Error;

pub use operators::{adjoint_matrix, op_f, op_fbar, op_g, op_gbar, proj_sym};
pub use se23::{exp_se23, log_se23, vee, wedge, HomogeneousPoint, Se23, Se23Tangent};
pub use so3::{skew, vex};

pub type Vector9<T> = SVector<T, 9>;
pub type Matrix9<T> = SMatrix<T, 9, 9>;
pub type Matrix5<T> = SMatrix<T, 5, 5>;
pub type Vector5<T> = SVector<T, 5>;

/// Precondition failures of the group/algebra maps.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LieError {
    #[error("matrix is not antisymmetric (symmetric part {asymmetry:e})")]
    NotSkew { asymmetry: f64 },
    #[error("bottom rows of an se2(3) matrix must vanish (max entry {max_entry:e})")]
    NotAlgebra { max_entry: f64 },
    #[error("rotation block is not orthonormal (error {error:e})")]
    NotRotation { error: f64 },
    #[error("5x5 matrix is not a homogeneous SE2(3) embedding")]
    NotGroupEmbedding,
    #[error("rotation angle is π; logarithm axis is ambiguous")]
    AngleAtPi,
}
