//! Scalar abstraction shared by the group and filter code.

use nalgebra::RealField;
use num_traits::{FromPrimitive, ToPrimitive};

/// Floating point type the Lie-group and filter math is generic over.
///
/// The associated tolerances are expressed in `f64` and converted on use, so
/// that `f32` builds get looser but still meaningful validity checks.
pub trait Scalar: RealField + Copy + FromPrimitive + ToPrimitive {
    /// Frobenius bound on `RᵀR - I` and `|det R - 1|` for a valid rotation.
    const ORTHONORMAL_TOL: f64;
    /// Entry-wise bound on the symmetric part of a matrix treated as skew.
    const SKEW_TOL: f64;
    /// Entry-wise bound on the bottom two rows of an algebra element.
    const ALGEBRA_ROW_TOL: f64;
    /// Below this rotation angle, Rodrigues coefficients use Taylor series.
    const SMALL_ANGLE: f64;

    /// Converts an `f64` literal into this scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }
}

macro_rules! impl_scalar {
    ($t:ty, $ortho:expr, $skew:expr, $rows:expr, $small:expr) => {
        impl Scalar for $t {
            const ORTHONORMAL_TOL: f64 = $ortho;
            const SKEW_TOL: f64 = $skew;
            const ALGEBRA_ROW_TOL: f64 = $rows;
            const SMALL_ANGLE: f64 = $small;
        }
    };
}

impl_scalar!(f64, 1e-9, 1e-9, 1e-12, 1e-6);
impl_scalar!(f32, 1e-4, 1e-4, 1e-6, 1e-3);
