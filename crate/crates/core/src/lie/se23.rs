use std::ops::Mul;

use nalgebra::{Matrix3, Vector3};

use super::so3::{
    exp_so3, left_jacobian, left_jacobian_inv, log_so3, orthonormality_error, project_to_rotation,
    skew, vex,
};
use super::{LieError, Matrix5, Vector5, Vector9};
use crate::Scalar;

/// Element of SE₂(3): attitude `rot`, inertial velocity `vel`, inertial
/// position `pos`.
///
/// Embeds as the 5×5 matrix `[R v x; 0 1 0; 0 0 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Se23<T: Scalar> {
    pub rot: Matrix3<T>,
    pub vel: Vector3<T>,
    pub pos: Vector3<T>,
}

/// Coordinates `(ξ_R, ξ_v, ξ_x)` of an element of se₂(3).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Se23Tangent<T: Scalar> {
    pub rot: Vector3<T>,
    pub vel: Vector3<T>,
    pub pos: Vector3<T>,
}

/// A 3-vector lifted to `(p, 0, 1)` so that `g * p̄` applies `R p + x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomogeneousPoint<T: Scalar>(Vector3<T>);

impl<T: Scalar> HomogeneousPoint<T> {
    pub fn new(p: Vector3<T>) -> Self {
        Self(p)
    }

    pub fn point(&self) -> Vector3<T> {
        self.0
    }

    pub fn to_vector(&self) -> Vector5<T> {
        Vector5::new(self.0.x, self.0.y, self.0.z, T::zero(), T::one())
    }
}

impl<T: Scalar> Se23Tangent<T> {
    pub fn new(rot: Vector3<T>, vel: Vector3<T>, pos: Vector3<T>) -> Self {
        Self { rot, vel, pos }
    }

    pub fn zero() -> Self {
        Self::new(Vector3::zeros(), Vector3::zeros(), Vector3::zeros())
    }

    pub fn from_vector(v: &Vector9<T>) -> Self {
        Self {
            rot: v.fixed_rows::<3>(0).into_owned(),
            vel: v.fixed_rows::<3>(3).into_owned(),
            pos: v.fixed_rows::<3>(6).into_owned(),
        }
    }

    pub fn to_vector(&self) -> Vector9<T> {
        let mut out = Vector9::zeros();
        out.fixed_rows_mut::<3>(0).copy_from(&self.rot);
        out.fixed_rows_mut::<3>(3).copy_from(&self.vel);
        out.fixed_rows_mut::<3>(6).copy_from(&self.pos);
        out
    }

    pub fn scale(&self, s: T) -> Self {
        Self::new(self.rot * s, self.vel * s, self.pos * s)
    }
}

/// 5×5 matrix `[(ξ_R)× ξ_v ξ_x; 0₂ₓ₅]`.
pub fn wedge<T: Scalar>(xi: &Se23Tangent<T>) -> Matrix5<T> {
    let mut m = Matrix5::zeros();
    m.fixed_view_mut::<3, 3>(0, 0).copy_from(&skew(&xi.rot));
    m.fixed_view_mut::<3, 1>(0, 3).copy_from(&xi.vel);
    m.fixed_view_mut::<3, 1>(0, 4).copy_from(&xi.pos);
    m
}

/// Inverse of [`wedge`]; rejects matrices outside se₂(3).
pub fn vee<T: Scalar>(m: &Matrix5<T>) -> Result<Se23Tangent<T>, LieError> {
    let bottom = m.fixed_view::<2, 5>(3, 0).abs().max();
    if bottom > T::lit(T::ALGEBRA_ROW_TOL) {
        return Err(LieError::NotAlgebra {
            max_entry: bottom.to_f64().unwrap_or(f64::NAN),
        });
    }
    let rot = vex(&m.fixed_view::<3, 3>(0, 0).into_owned())?;
    Ok(Se23Tangent {
        rot,
        vel: m.fixed_view::<3, 1>(0, 3).into_owned(),
        pos: m.fixed_view::<3, 1>(0, 4).into_owned(),
    })
}

impl<T: Scalar> Se23<T> {
    /// Builds a group element, checking that `rot` is a proper rotation.
    pub fn new(rot: Matrix3<T>, vel: Vector3<T>, pos: Vector3<T>) -> Result<Self, LieError> {
        let tol = T::lit(T::ORTHONORMAL_TOL);
        let err = orthonormality_error(&rot);
        let det_err = (rot.determinant() - T::one()).abs();
        if !(err <= tol && det_err <= tol) {
            return Err(LieError::NotRotation {
                error: err.max(det_err).to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { rot, vel, pos })
    }

    pub fn identity() -> Self {
        Self {
            rot: Matrix3::identity(),
            vel: Vector3::zeros(),
            pos: Vector3::zeros(),
        }
    }

    /// Homogeneous 5×5 embedding.
    pub fn to_matrix(&self) -> Matrix5<T> {
        let mut m = Matrix5::identity();
        m.fixed_view_mut::<3, 3>(0, 0).copy_from(&self.rot);
        m.fixed_view_mut::<3, 1>(0, 3).copy_from(&self.vel);
        m.fixed_view_mut::<3, 1>(0, 4).copy_from(&self.pos);
        m
    }

    pub fn from_matrix(m: &Matrix5<T>) -> Result<Self, LieError> {
        let tail = m.fixed_view::<2, 5>(3, 0) - Matrix5::<T>::identity().fixed_view::<2, 5>(3, 0);
        if tail.abs().max() > T::lit(T::ALGEBRA_ROW_TOL) {
            return Err(LieError::NotGroupEmbedding);
        }
        Self::new(
            m.fixed_view::<3, 3>(0, 0).into_owned(),
            m.fixed_view::<3, 1>(0, 3).into_owned(),
            m.fixed_view::<3, 1>(0, 4).into_owned(),
        )
    }

    /// Group product `self * other`, re-orthonormalizing the rotation if it
    /// has drifted past tolerance.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            rot: self.rot * other.rot,
            vel: self.rot * other.vel + self.vel,
            pos: self.rot * other.pos + self.pos,
        }
        .renormalized()
    }

    pub fn inverse(&self) -> Self {
        let rt = self.rot.transpose();
        Self {
            rot: rt,
            vel: -(rt * self.vel),
            pos: -(rt * self.pos),
        }
    }

    /// Applies the group action on a point: `R p + x`.
    pub fn act(&self, p: &Vector3<T>) -> Vector3<T> {
        self.rot * p + self.pos
    }

    pub fn orthonormality_error(&self) -> T {
        orthonormality_error(&self.rot)
    }

    /// Projects `rot` back to SO(3) when `‖RᵀR - I‖_F` exceeds tolerance.
    pub fn renormalized(mut self) -> Self {
        if self.orthonormality_error() > T::lit(T::ORTHONORMAL_TOL) {
            self.rot = project_to_rotation(&self.rot);
        }
        self
    }
}

impl<T: Scalar> Mul for Se23<T> {
    type Output = Se23<T>;

    fn mul(self, rhs: Self) -> Self::Output {
        self.compose(&rhs)
    }
}

impl<'a, T: Scalar> Mul<&'a Se23<T>> for &'a Se23<T> {
    type Output = Se23<T>;

    fn mul(self, rhs: &'a Se23<T>) -> Self::Output {
        self.compose(rhs)
    }
}

/// Matrix exponential of `wedge(ξ)` in closed form.
pub fn exp_se23<T: Scalar>(xi: &Se23Tangent<T>) -> Se23<T> {
    let jl = left_jacobian(&xi.rot);
    Se23 {
        rot: exp_so3(&xi.rot),
        vel: jl * xi.vel,
        pos: jl * xi.pos,
    }
    .renormalized()
}

/// Principal logarithm; the rotation angle must be below π.
pub fn log_se23<T: Scalar>(g: &Se23<T>) -> Result<Se23Tangent<T>, LieError> {
    let rot = log_so3(&g.rot)?;
    let jinv = left_jacobian_inv(&rot);
    Ok(Se23Tangent {
        rot,
        vel: jinv * g.vel,
        pos: jinv * g.pos,
    })
}
