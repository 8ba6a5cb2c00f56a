//! Rotation-group helpers: skew/vex, Rodrigues exponential, left Jacobian, log.

use nalgebra::{Matrix3, Vector3};

use super::LieError;
use crate::Scalar;

/// Returns `w×`, the matrix with `skew(w) * u == w.cross(u)`.
pub fn skew<T: Scalar>(w: &Vector3<T>) -> Matrix3<T> {
    let z = T::zero();
    Matrix3::new(z, -w.z, w.y, w.z, z, -w.x, -w.y, w.x, z)
}

/// Inverse of [`skew`]. Rejects matrices whose symmetric part exceeds the
/// scalar's skew tolerance.
pub fn vex<T: Scalar>(m: &Matrix3<T>) -> Result<Vector3<T>, LieError> {
    let tol = T::lit(T::SKEW_TOL);
    let asym = (m + m.transpose()).abs().max() * T::lit(0.5);
    if asym > tol {
        return Err(LieError::NotSkew {
            asymmetry: asym.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(vex_unchecked(m))
}

/// Reads the axial vector of the antisymmetric part of `m`.
pub(crate) fn vex_unchecked<T: Scalar>(m: &Matrix3<T>) -> Vector3<T> {
    let half = T::lit(0.5);
    Vector3::new(
        (m[(2, 1)] - m[(1, 2)]) * half,
        (m[(0, 2)] - m[(2, 0)]) * half,
        (m[(1, 0)] - m[(0, 1)]) * half,
    )
}

/// Below this angle the cancelling coefficients `(θ-sinθ)/θ³` and the
/// inverse-Jacobian term are taken from their series, whose truncation error
/// here is under 1e-15.
const SERIES_ANGLE: f64 = 0.1;

/// Rodrigues coefficients `(sinθ/θ, (1-cosθ)/θ², (θ-sinθ)/θ³)`.
fn rodrigues_coeffs<T: Scalar>(theta: T) -> (T, T, T) {
    let t2 = theta * theta;
    let t4 = t2 * t2;
    if theta < T::lit(T::SMALL_ANGLE) {
        return (
            T::one() - t2 / T::lit(6.0) + t4 / T::lit(120.0),
            T::lit(0.5) - t2 / T::lit(24.0) + t4 / T::lit(720.0),
            T::lit(1.0 / 6.0) - t2 / T::lit(120.0) + t4 / T::lit(5040.0),
        );
    }
    let s = theta.sin();
    // 1 - cosθ = 2 sin²(θ/2) avoids cancellation.
    let half = theta * T::lit(0.5);
    let sinc_half = half.sin() / half;
    let b = T::lit(0.5) * sinc_half * sinc_half;
    let third = if theta < T::lit(SERIES_ANGLE) {
        T::lit(1.0 / 6.0) - t2 / T::lit(120.0) + t4 / T::lit(5040.0) - t4 * t2 / T::lit(362880.0)
    } else {
        (theta - s) / (t2 * theta)
    };
    (s / theta, b, third)
}

/// Rotation `exp(w×)`.
pub fn exp_so3<T: Scalar>(w: &Vector3<T>) -> Matrix3<T> {
    let (a, b, _) = rodrigues_coeffs(w.norm());
    let k = skew(w);
    Matrix3::identity() + k * a + k * k * b
}

/// Left Jacobian of SO(3), `Σ (w×)^k / (k+1)!`.
pub fn left_jacobian<T: Scalar>(w: &Vector3<T>) -> Matrix3<T> {
    let (_, b, c) = rodrigues_coeffs(w.norm());
    let k = skew(w);
    Matrix3::identity() + k * b + k * k * c
}

/// Inverse of [`left_jacobian`], valid for `‖w‖ < 2π`.
pub fn left_jacobian_inv<T: Scalar>(w: &Vector3<T>) -> Matrix3<T> {
    let theta = w.norm();
    let k = skew(w);
    let coeff = if theta < T::lit(SERIES_ANGLE) {
        let t2 = theta * theta;
        T::one() / T::lit(12.0)
            + t2 / T::lit(720.0)
            + t2 * t2 / T::lit(30240.0)
            + t2 * t2 * t2 / T::lit(1209600.0)
    } else {
        let (s, c) = theta.sin_cos();
        T::one() / (theta * theta) - (T::one() + c) / (T::lit(2.0) * theta * s)
    };
    Matrix3::identity() - k * T::lit(0.5) + k * k * coeff
}

/// Rotation vector of `r`, restricted to angles below π.
pub fn log_so3<T: Scalar>(r: &Matrix3<T>) -> Result<Vector3<T>, LieError> {
    let two = T::lit(2.0);
    let trace = r.trace();
    if trace <= -T::one() + T::lit(1e-9) {
        return Err(LieError::AngleAtPi);
    }
    let cos = ((trace - T::one()) / two).clamp(-T::one(), T::one());
    let axial = vex_unchecked(r);
    let sin = axial.norm();
    let theta = sin.atan2(cos);

    if theta < T::lit(T::SMALL_ANGLE) {
        // θ/sinθ ≈ 1 + θ²/6
        let t2 = theta * theta;
        return Ok(axial * (T::one() + t2 / T::lit(6.0) + t2 * t2 * T::lit(7.0 / 360.0)));
    }
    if cos > T::lit(-0.9) {
        return Ok(axial * (theta / sin));
    }

    // Near π the antisymmetric part is tiny; recover the axis from the
    // symmetric part, (R + Rᵀ)/2 - cosθ I = (1 - cosθ) n nᵀ.
    let sym = (r + r.transpose()) * T::lit(0.5) - Matrix3::identity() * cos;
    let col = (0..3)
        .max_by(|&i, &j| {
            sym[(i, i)]
                .partial_cmp(&sym[(j, j)])
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .unwrap_or(0);
    let mut axis: Vector3<T> = sym.column(col).into_owned();
    axis /= axis.norm();
    if axis.dot(&axial) < T::zero() {
        axis = -axis;
    }
    Ok(axis * theta)
}

/// Frobenius norm of `RᵀR - I`.
pub fn orthonormality_error<T: Scalar>(r: &Matrix3<T>) -> T {
    (r.transpose() * r - Matrix3::identity()).norm()
}

/// Nearest rotation in the Frobenius sense (polar factor via SVD).
pub fn project_to_rotation<T: Scalar>(r: &Matrix3<T>) -> Matrix3<T> {
    let svd = r.svd(true, true);
    let (u, v_t) = match (svd.u, svd.v_t) {
        (Some(u), Some(v_t)) => (u, v_t),
        _ => return *r,
    };
    let mut d = Matrix3::identity();
    if (u * v_t).determinant() < T::zero() {
        d[(2, 2)] = -T::one();
    }
    u * d * v_t
}
