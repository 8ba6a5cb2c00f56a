//! Ground truth and sensor simulation.
//!
//! The vehicle follows `Ṙ = R Ω×`, `v̇ = R a`, `ẋ = v` with constant body-frame
//! `Ω` and `a`. IMU readings and landmark batches are corrupted with
//! standard-normal noise drawn from ChaCha8 generators, so a seed fully
//! determines every sample stream.

use nalgebra::{Matrix3, Vector3};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::filter::Observation;
use crate::lie::so3::{exp_so3, left_jacobian, skew};
use crate::{GroupElement, ImuSample, LandmarkBatch, LandmarkMap, NoiseGains};

pub type SimRng = ChaCha8Rng;

const IMU_STREAM: u64 = 0;
const LANDMARK_STREAM: u64 = 1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("trajectory duration must be positive, got {0}")]
    NonPositiveDuration(f64),
    #[error(
        "sensor rates must satisfy imu_rate >= landmark_rate > 0 (imu {imu}, landmark {landmark})"
    )]
    BadRates { imu: f64, landmark: f64 },
    #[error("imu rate {imu} Hz is not an integer multiple of landmark rate {landmark} Hz")]
    RatesNotCommensurate { imu: f64, landmark: f64 },
    #[error("dropout probability must lie in [0, 1], got {0}")]
    BadDropout(f64),
    #[error("noise scale must be finite and non-negative, got {0}")]
    BadNoiseScale(f64),
}

/// Constant-rate motion starting from `g0`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectorySpec {
    pub g0: GroupElement,
    pub omega_body: Vector3<f64>,
    pub accel_body: Vector3<f64>,
    pub duration: f64,
}

impl TrajectorySpec {
    pub fn new(
        g0: GroupElement,
        omega_body: Vector3<f64>,
        accel_body: Vector3<f64>,
        duration: f64,
    ) -> Result<Self, SimError> {
        if !duration.is_finite() || duration <= 0.0 {
            return Err(SimError::NonPositiveDuration(duration));
        }
        Ok(Self {
            g0,
            omega_body,
            accel_body,
            duration,
        })
    }

    pub fn initial_sample(&self) -> GroundTruthSample {
        GroundTruthSample {
            t: 0.0,
            g: self.g0,
            omega: self.omega_body,
            accel: self.accel_body,
        }
    }
}

/// Linear maps applied to the simulated standard-normal disturbances.
///
/// Unlike [`NoiseGains`], `d` may be singular, so noise-free runs are
/// expressible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensorNoise {
    pub b_omega: Matrix3<f64>,
    pub b_a: Matrix3<f64>,
    pub d: Matrix3<f64>,
}

impl SensorNoise {
    pub fn zero() -> Self {
        Self {
            b_omega: Matrix3::zeros(),
            b_a: Matrix3::zeros(),
            d: Matrix3::zeros(),
        }
    }

    /// The filter's noise model scaled by `scale`.
    pub fn from_gains(gains: &NoiseGains, scale: f64) -> Self {
        Self {
            b_omega: gains.b_omega() * scale,
            b_a: gains.b_a() * scale,
            d: gains.d() * scale,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SensorSpec {
    pub imu_rate: f64,
    pub landmark_rate: f64,
    pub noise: SensorNoise,
    pub landmarks: LandmarkMap,
    /// Probability that any one landmark is missing from a batch.
    pub dropout: f64,
    pub seed: u64,
}

impl SensorSpec {
    pub fn validate(&self) -> Result<(), SimError> {
        let (imu, landmark) = (self.imu_rate, self.landmark_rate);
        if !(landmark > 0.0 && imu >= landmark && imu.is_finite()) {
            return Err(SimError::BadRates { imu, landmark });
        }
        let ratio = imu / landmark;
        if (ratio - ratio.round()).abs() > 1e-9 * ratio {
            return Err(SimError::RatesNotCommensurate { imu, landmark });
        }
        if !(0.0..=1.0).contains(&self.dropout) {
            return Err(SimError::BadDropout(self.dropout));
        }
        Ok(())
    }

    /// IMU steps between consecutive landmark batches.
    pub fn steps_per_landmark(&self) -> usize {
        (self.imu_rate / self.landmark_rate).round() as usize
    }

    pub fn imu_dt(&self) -> f64 {
        1.0 / self.imu_rate
    }
}

/// True state and the (constant) body rates driving it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundTruthSample {
    pub t: f64,
    pub g: GroupElement,
    pub omega: Vector3<f64>,
    pub accel: Vector3<f64>,
}

/// Integral weights `Σ W^k/(k+2)!` for `W = θ×`, i.e. `½I + c₁W + c₂W²`.
fn second_integral(theta: &Vector3<f64>) -> Matrix3<f64> {
    let t = theta.norm();
    let (c1, c2) = if t < 1e-3 {
        let t2 = t * t;
        (
            1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0,
            1.0 / 24.0 - t2 / 720.0 + t2 * t2 / 40320.0,
        )
    } else {
        let t2 = t * t;
        (
            (t - t.sin()) / (t2 * t),
            (t2 + 2.0 * t.cos() - 2.0) / (2.0 * t2 * t2),
        )
    };
    let w = skew(theta);
    Matrix3::identity() * 0.5 + w * c1 + w * w * c2
}

/// Advances the truth by `dt`.
///
/// Body rates are constant within the step, so the step is integrated in
/// closed form: `R⁺ = R exp(dt Ω)`, `v⁺ = v + dt R J(dt Ω) a`,
/// `x⁺ = x + dt v + dt² R Γ₂(dt Ω) a`.
pub fn propagate_truth(
    sample: &GroundTruthSample,
    spec: &TrajectorySpec,
    dt: f64,
) -> GroundTruthSample {
    let theta = spec.omega_body * dt;
    let g = &sample.g;
    let rot = g.rot * exp_so3(&theta);
    let vel = g.vel + g.rot * (left_jacobian(&theta) * spec.accel_body) * dt;
    let pos = g.pos + g.vel * dt + g.rot * (second_integral(&theta) * spec.accel_body) * (dt * dt);
    GroundTruthSample {
        t: sample.t + dt,
        g: GroupElement { rot, vel, pos }.renormalized(),
        omega: spec.omega_body,
        accel: spec.accel_body,
    }
}

fn normal3<R: Rng + ?Sized>(rng: &mut R) -> Vector3<f64> {
    Vector3::new(
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
    )
}

/// Generator for the IMU noise stream of trial `seed`.
pub fn imu_rng(seed: u64) -> SimRng {
    let mut rng = SimRng::seed_from_u64(seed);
    rng.set_stream(IMU_STREAM);
    rng
}

/// Generator for the landmark noise stream of trial `seed`.
pub fn landmark_rng(seed: u64) -> SimRng {
    let mut rng = SimRng::seed_from_u64(seed);
    rng.set_stream(LANDMARK_STREAM);
    rng
}

/// `u_Ω = Ω + B_Ω δ_Ω`, `u_a = a + B_a δ_a`.
pub fn sample_imu<R: Rng + ?Sized>(
    truth: &GroundTruthSample,
    noise: &SensorNoise,
    rng: &mut R,
) -> ImuSample {
    let d_omega = normal3(rng);
    let d_a = normal3(rng);
    ImuSample::new(
        truth.t,
        truth.omega + noise.b_omega * d_omega,
        truth.accel + noise.b_a * d_a,
    )
}

/// `yᵢ = Rᵀ(lᵢ - x) + D εᵢ` for each landmark that survives dropout.
pub fn sample_landmarks<R: Rng + ?Sized>(
    truth: &GroundTruthSample,
    spec: &SensorSpec,
    rng: &mut R,
) -> LandmarkBatch {
    let g = &truth.g;
    let observations = spec
        .landmarks
        .points()
        .iter()
        .enumerate()
        .filter_map(|(index, l)| {
            let dropped = rng.random::<f64>() < spec.dropout;
            let eps = normal3(rng);
            (!dropped).then(|| Observation {
                index,
                y: g.rot.transpose() * (l - g.pos) + spec.noise.d * eps,
            })
        })
        .collect();
    LandmarkBatch::new(truth.t, observations)
}
