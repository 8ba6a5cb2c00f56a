//! Discrete predict/update cycle.

use nalgebra::SMatrix;

use super::model::{a_matrix, ad_vec, b_matrix, e_matrix, lambda_hat, residual_vec};
use super::{FilterError, FilterState, ImuSample, LandmarkBatch, LandmarkMap, NoiseGains};
use crate::lie::{exp_se23, proj_sym, Matrix9, Se23, Se23Tangent};
use crate::Scalar;

/// Cholesky test for positive definiteness.
pub fn is_positive_definite<T: Scalar>(p: &Matrix9<T>) -> bool {
    p.iter().all(|x| x.is_finite()) && p.cholesky().is_some()
}

/// Starts a filter at `g0_hat` with information matrix `p0`.
pub fn init<T: Scalar>(
    g0_hat: Se23<T>,
    p0: Matrix9<T>,
    t0: T,
) -> Result<FilterState<T>, FilterError> {
    let asym = (p0 - p0.transpose()).abs().max();
    if asym > T::lit(T::SKEW_TOL) * p0.abs().max().max(T::one()) || !is_positive_definite(&p0) {
        return Err(FilterError::InvalidInitialGain);
    }
    Ok(FilterState {
        g_hat: g0_hat,
        p: proj_sym(&p0),
        t: t0,
    })
}

/// IMU propagation over `dt`.
///
/// The estimate takes a Lie-group Euler step `ĝ exp(dt λ̂)`; the information
/// matrix takes an Euler step of its measurement-free dynamics,
/// `P - 2 dt P_s{P A} - dt P B Bᵀ P`.
pub fn predict<T: Scalar>(
    state: &FilterState<T>,
    imu: &ImuSample<T>,
    dt: T,
    gains: &NoiseGains<T>,
) -> FilterState<T> {
    debug_assert!(dt >= T::zero(), "negative prediction step");
    let lambda = lambda_hat(&state.g_hat, imu);
    let g_hat = state.g_hat.compose(&exp_se23(&lambda.scale(dt)));

    let p = &state.p;
    let b: SMatrix<T, 9, 6> = b_matrix(gains);
    let pb = p * b;
    let two = T::lit(2.0);
    let p_next = p - proj_sym(&(p * a_matrix(imu))) * (two * dt) - pb * pb.transpose() * dt;

    FilterState {
        g_hat,
        p: proj_sym(&p_next),
        t: state.t + dt,
    }
}

/// Discrete landmark correction.
///
/// The information matrix is updated first,
/// `P⁺ = P + α E + α P_s{P ad(P⁻¹r)}`, and the estimate is then moved by
/// `exp(α (P⁺)⁻¹ r)`. Both `r` and `E` are evaluated at the pre-update
/// estimate. Fails if `P⁺` is not positive definite.
pub fn update<T: Scalar>(
    state: &FilterState<T>,
    batch: &LandmarkBatch<T>,
    map: &LandmarkMap<T>,
    gains: &NoiseGains<T>,
) -> Result<FilterState<T>, FilterError> {
    batch.validate(map)?;
    if batch.is_empty() {
        return Ok(state.clone());
    }
    let t_err = || FilterError::NotPositiveDefinite {
        t: state.t.to_f64().unwrap_or(f64::NAN),
    };

    let alpha = gains.alpha();
    let p = &state.p;
    let r = residual_vec(&state.g_hat, batch, map, gains);
    let kr = p.cholesky().ok_or_else(t_err)?.solve(&r);
    let e = e_matrix(&state.g_hat, batch, map, gains);

    let p_next = proj_sym(&(p + e * alpha + proj_sym(&(p * ad_vec(&kr))) * alpha));
    if !p_next.iter().all(|x| x.is_finite()) {
        return Err(t_err());
    }
    let step = p_next.cholesky().ok_or_else(t_err)?.solve(&r) * alpha;
    let g_hat = state
        .g_hat
        .compose(&exp_se23(&Se23Tangent::from_vector(&step)));

    Ok(FilterState {
        g_hat,
        p: p_next,
        t: state.t,
    })
}
