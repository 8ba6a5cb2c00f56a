//! Explicit matrix forms of the filter's model operators.

use nalgebra::{Matrix3, SMatrix, Vector3};

use super::{ImuSample, LandmarkBatch, LandmarkMap, NoiseGains};
use crate::lie::{adjoint_matrix, op_f, op_g, proj_sym, skew, Matrix9, Se23, Se23Tangent, Vector9};
use crate::Scalar;

/// Orientation of the residual relative to `Σ F(ŷ)ᵀ P_y (y - ŷ)`.
///
/// The landmark derivative is `dh(ĝ)∘ĝX = -F(ŷ) X∨`, so the residual pairing
/// `P_y (y - ŷ)` with that derivative carries a minus sign. With `+1` the
/// correction pushes the estimate away from the measurements.
pub const RESIDUAL_SIGN: f64 = -1.0;

/// Model velocity `(u_Ω, u_a, R̂ᵀv̂)` evaluated at the estimate.
pub fn lambda_hat<T: Scalar>(g_hat: &Se23<T>, imu: &ImuSample<T>) -> Se23Tangent<T> {
    Se23Tangent::new(imu.omega, imu.accel, g_hat.rot.transpose() * g_hat.vel)
}

/// Predicted body-frame landmark position `R̂ᵀ(l - x̂)`.
pub fn predict_landmark<T: Scalar>(g_hat: &Se23<T>, l: &Vector3<T>) -> Vector3<T> {
    g_hat.rot.transpose() * (l - g_hat.pos)
}

/// Linearized dynamics `[[-u_Ω×, 0, 0], [-u_a×, -u_Ω×, 0], [0, I, -u_Ω×]]`.
pub fn a_matrix<T: Scalar>(imu: &ImuSample<T>) -> Matrix9<T> {
    let w = -skew(&imu.omega);
    let mut m = Matrix9::zeros();
    for k in 0..3 {
        m.fixed_view_mut::<3, 3>(3 * k, 3 * k).copy_from(&w);
    }
    m.fixed_view_mut::<3, 3>(3, 0)
        .copy_from(&(-skew(&imu.accel)));
    m.fixed_view_mut::<3, 3>(6, 3)
        .copy_from(&Matrix3::identity());
    m
}

/// Disturbance input map `[[-B_Ω, 0], [0, -B_a], [0, 0]]`.
///
/// Only `B Bᵀ` reaches the filter, so the sign is immaterial.
pub fn b_matrix<T: Scalar>(gains: &NoiseGains<T>) -> SMatrix<T, 9, 6> {
    let mut m = SMatrix::<T, 9, 6>::zeros();
    m.fixed_view_mut::<3, 3>(0, 0)
        .copy_from(&(-gains.b_omega()));
    m.fixed_view_mut::<3, 3>(3, 3).copy_from(&(-gains.b_a()));
    m
}

/// Residual `σ Σᵢ F(ŷᵢ)ᵀ P_y (yᵢ - ŷᵢ)` over the landmarks present in `batch`.
pub fn residual_vec<T: Scalar>(
    g_hat: &Se23<T>,
    batch: &LandmarkBatch<T>,
    map: &LandmarkMap<T>,
    gains: &NoiseGains<T>,
) -> Vector9<T> {
    let sign = T::lit(RESIDUAL_SIGN);
    batch
        .pairs(map)
        .map(|(l, y)| {
            let y_hat = predict_landmark(g_hat, l);
            op_f(&y_hat).transpose() * (gains.p_y() * (y - y_hat))
        })
        .fold(Vector9::zeros(), |acc, term| acc + term)
        * sign
}

/// Landmark curvature `Σᵢ [F(ŷᵢ)ᵀ P_y F(ŷᵢ) - P_s{F(ŷᵢ)ᵀ G(P_y (yᵢ - ŷᵢ))}]`.
pub fn e_matrix<T: Scalar>(
    g_hat: &Se23<T>,
    batch: &LandmarkBatch<T>,
    map: &LandmarkMap<T>,
    gains: &NoiseGains<T>,
) -> Matrix9<T> {
    let p_y = gains.p_y();
    let sum = batch
        .pairs(map)
        .map(|(l, y)| {
            let y_hat = predict_landmark(g_hat, l);
            let f = op_f(&y_hat);
            let weighted = p_y * (y - y_hat);
            f.transpose() * p_y * f - proj_sym(&(f.transpose() * op_g(&weighted)))
        })
        .fold(Matrix9::zeros(), |acc, term| acc + term);
    proj_sym(&sum)
}

/// Adjoint matrix of a 9-vector in `(ξ_R, ξ_v, ξ_x)` order.
pub(crate) fn ad_vec<T: Scalar>(v: &Vector9<T>) -> Matrix9<T> {
    adjoint_matrix(&Se23Tangent::from_vector(v))
}
