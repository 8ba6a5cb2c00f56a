//! Continuous-time gain dynamics, in information (`P`) and gain (`K`) form.
//!
//! The runtime loop never integrates these directly; they are the reference
//! the discrete predict/update steps are checked against.

use nalgebra::SMatrix;

use super::model::{a_matrix, ad_vec, b_matrix, e_matrix, residual_vec};
use super::{FilterError, FilterState, ImuSample, LandmarkBatch, LandmarkMap, NoiseGains};
use crate::lie::{proj_sym, Matrix9, Se23};
use crate::Scalar;

fn process_noise<T: Scalar>(gains: &NoiseGains<T>) -> Matrix9<T> {
    let b: SMatrix<T, 9, 6> = b_matrix(gains);
    b * b.transpose()
}

/// `Ṗ = -P_s{2PA - P ad(P⁻¹r)} + E - P B Bᵀ P`.
pub fn p_dot<T: Scalar>(
    state: &FilterState<T>,
    imu: &ImuSample<T>,
    batch: &LandmarkBatch<T>,
    map: &LandmarkMap<T>,
    gains: &NoiseGains<T>,
) -> Result<Matrix9<T>, FilterError> {
    let p = &state.p;
    let r = residual_vec(&state.g_hat, batch, map, gains);
    let kr = p.lu().solve(&r).ok_or(FilterError::SingularGain)?;
    let a = a_matrix(imu);
    let e = e_matrix(&state.g_hat, batch, map, gains);
    let two = T::lit(2.0);
    Ok(-proj_sym(&(p * a * two - p * ad_vec(&kr))) + e - p * process_noise(gains) * p)
}

/// `K̇ = P_s{2AK - ad(Kr) K} - K E K + B Bᵀ`.
pub fn k_dot<T: Scalar>(
    k: &Matrix9<T>,
    g_hat: &Se23<T>,
    imu: &ImuSample<T>,
    batch: &LandmarkBatch<T>,
    map: &LandmarkMap<T>,
    gains: &NoiseGains<T>,
) -> Matrix9<T> {
    let kr = k * residual_vec(g_hat, batch, map, gains);
    let a = a_matrix(imu);
    let e = e_matrix(g_hat, batch, map, gains);
    let two = T::lit(2.0);
    proj_sym(&(a * k * two - ad_vec(&kr) * k)) - k * e * k + process_noise(gains)
}
