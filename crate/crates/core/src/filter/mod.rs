//! Second-order minimum-energy filter on SE₂(3).
//!
//! The gain is carried in information form, `P = K⁻¹`. IMU samples drive a
//! Lie-group Euler prediction of the estimate together with an Euler step of
//! the measurement-free part of the `P` dynamics; landmark batches, whenever
//! they arrive, apply a discrete correction weighted by `alpha`.

mod driver;
mod model;
mod riccati;
mod step;

use nalgebra::{Matrix3, Vector3};
use thiserror::Error;

use crate::lie::{Matrix9, Se23};
use crate::Scalar;

pub use driver::AsyncFilter;
pub use model::{
    a_matrix, b_matrix, e_matrix, lambda_hat, predict_landmark, residual_vec, RESIDUAL_SIGN,
};
pub use riccati::{k_dot, p_dot};
pub use step::{init, is_positive_definite, predict, update};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FilterError {
    #[error("measurement noise map D is not invertible")]
    SingularNoiseMap,
    #[error("update gain alpha must be positive, got {0}")]
    NonPositiveAlpha(f64),
    #[error("landmark map must contain at least one landmark")]
    EmptyLandmarkMap,
    #[error("landmark index {index} is outside the map of {len} landmarks")]
    LandmarkOutOfRange { index: usize, len: usize },
    #[error("landmark index {0} appears more than once in a batch")]
    DuplicateLandmark(usize),
    #[error("initial information matrix is not symmetric positive definite")]
    InvalidInitialGain,
    #[error("information matrix is singular")]
    SingularGain,
    #[error("information matrix lost positive definiteness at t = {t}")]
    NotPositiveDefinite { t: f64 },
}

/// Noise model and discrete-update weight.
///
/// `B_Ω`, `B_a` shape the IMU disturbances, `D` the landmark noise, and
/// `alpha` scales each discrete landmark correction.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseGains<T: Scalar> {
    b_omega: Matrix3<T>,
    b_a: Matrix3<T>,
    d: Matrix3<T>,
    alpha: T,
    p_y: Matrix3<T>,
}

impl<T: Scalar> NoiseGains<T> {
    pub fn new(
        b_omega: Matrix3<T>,
        b_a: Matrix3<T>,
        d: Matrix3<T>,
        alpha: T,
    ) -> Result<Self, FilterError> {
        if !alpha.is_finite() || alpha <= T::zero() {
            return Err(FilterError::NonPositiveAlpha(
                alpha.to_f64().unwrap_or(f64::NAN),
            ));
        }
        let d_inv = d.try_inverse().ok_or(FilterError::SingularNoiseMap)?;
        if !d_inv.iter().all(|x| x.is_finite()) {
            return Err(FilterError::SingularNoiseMap);
        }
        let p_y = d_inv.transpose() * d_inv;
        Ok(Self {
            b_omega,
            b_a,
            d,
            alpha,
            p_y,
        })
    }

    /// Isotropic gains `b_omega·I`, `b_a·I`, `d·I`.
    pub fn isotropic(b_omega: T, b_a: T, d: T, alpha: T) -> Result<Self, FilterError> {
        let i = Matrix3::identity();
        Self::new(i * b_omega, i * b_a, i * d, alpha)
    }

    pub fn b_omega(&self) -> &Matrix3<T> {
        &self.b_omega
    }

    pub fn b_a(&self) -> &Matrix3<T> {
        &self.b_a
    }

    pub fn d(&self) -> &Matrix3<T> {
        &self.d
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    /// Landmark weighting `P_y = D⁻ᵀ D⁻¹`.
    pub fn p_y(&self) -> &Matrix3<T> {
        &self.p_y
    }

    pub fn with_alpha(&self, alpha: T) -> Result<Self, FilterError> {
        Self::new(self.b_omega, self.b_a, self.d, alpha)
    }
}

/// Fixed landmark positions in the inertial frame, indexed from zero.
#[derive(Debug, Clone, PartialEq)]
pub struct LandmarkMap<T: Scalar> {
    points: Vec<Vector3<T>>,
}

impl<T: Scalar> LandmarkMap<T> {
    pub fn new(points: Vec<Vector3<T>>) -> Result<Self, FilterError> {
        if points.is_empty() {
            return Err(FilterError::EmptyLandmarkMap);
        }
        Ok(Self { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&Vector3<T>> {
        self.points.get(index)
    }

    pub fn points(&self) -> &[Vector3<T>] {
        &self.points
    }
}

/// Gyroscope and accelerometer reading, both in the body frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImuSample<T: Scalar> {
    pub t: T,
    pub omega: Vector3<T>,
    pub accel: Vector3<T>,
}

impl<T: Scalar> ImuSample<T> {
    pub fn new(t: T, omega: Vector3<T>, accel: Vector3<T>) -> Self {
        Self { t, omega, accel }
    }
}

/// Body-frame relative position of one landmark.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observation<T: Scalar> {
    pub index: usize,
    pub y: Vector3<T>,
}

/// Landmark measurements taken at a single instant; any subset of the map
/// may be present.
#[derive(Debug, Clone, PartialEq)]
pub struct LandmarkBatch<T: Scalar> {
    pub t: T,
    pub observations: Vec<Observation<T>>,
}

impl<T: Scalar> LandmarkBatch<T> {
    pub fn new(t: T, observations: Vec<Observation<T>>) -> Self {
        Self { t, observations }
    }

    pub fn empty(t: T) -> Self {
        Self::new(t, Vec::new())
    }

    pub fn is_empty(&self) -> bool {
        self.observations.is_empty()
    }

    /// Checks that indices are distinct and inside `map`.
    pub fn validate(&self, map: &LandmarkMap<T>) -> Result<(), FilterError> {
        let mut seen = vec![false; map.len()];
        for obs in &self.observations {
            let slot = seen
                .get_mut(obs.index)
                .ok_or(FilterError::LandmarkOutOfRange {
                    index: obs.index,
                    len: map.len(),
                })?;
            if *slot {
                return Err(FilterError::DuplicateLandmark(obs.index));
            }
            *slot = true;
        }
        Ok(())
    }

    /// Pairs each observation with its mapped landmark. Panics on an
    /// out-of-range index; call [`validate`](Self::validate) first for
    /// untrusted batches.
    pub(crate) fn pairs<'a>(
        &'a self,
        map: &'a LandmarkMap<T>,
    ) -> impl Iterator<Item = (&'a Vector3<T>, &'a Vector3<T>)> + 'a {
        self.observations.iter().map(move |obs| {
            let l = map
                .get(obs.index)
                .unwrap_or_else(|| panic!("landmark index {} outside map", obs.index));
            (l, &obs.y)
        })
    }
}

/// Estimate `ĝ`, information matrix `P = K⁻¹`, and time.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterState<T: Scalar> {
    pub g_hat: Se23<T>,
    pub p: Matrix9<T>,
    pub t: T,
}
