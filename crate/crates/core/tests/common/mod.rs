//! Random-instance generators and dense reference computations shared by the
//! integration tests.
#![allow(dead_code)]

use nalgebra::{Matrix3, SMatrix, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use se23_mef::lie::{exp_se23, wedge, Matrix5, Matrix9, Se23Tangent, Vector9};
use se23_mef::{AlgebraVector, GroupElement};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(rng: &mut ChaCha8Rng, half_width: f64) -> f64 {
    rng.random_range(-half_width..half_width)
}

pub fn vec3(rng: &mut ChaCha8Rng, half_width: f64) -> Vector3<f64> {
    Vector3::new(
        uniform(rng, half_width),
        uniform(rng, half_width),
        uniform(rng, half_width),
    )
}

pub fn vec9(rng: &mut ChaCha8Rng, half_width: f64) -> Vector9<f64> {
    Vector9::from_fn(|_, _| uniform(rng, half_width))
}

pub fn tangent(rng: &mut ChaCha8Rng, half_width: f64) -> AlgebraVector {
    Se23Tangent::new(
        vec3(rng, half_width),
        vec3(rng, half_width),
        vec3(rng, half_width),
    )
}

/// Random tangent with rotation angle below `max_angle`.
pub fn tangent_with_angle(rng: &mut ChaCha8Rng, max_angle: f64, half_width: f64) -> AlgebraVector {
    let mut axis = vec3(rng, 1.0);
    while axis.norm() < 1e-3 {
        axis = vec3(rng, 1.0);
    }
    let angle = rng.random_range(0.0..max_angle);
    Se23Tangent::new(
        axis.normalize() * angle,
        vec3(rng, half_width),
        vec3(rng, half_width),
    )
}

pub fn group(rng: &mut ChaCha8Rng) -> GroupElement {
    exp_se23(&tangent_with_angle(rng, 3.0, 5.0))
}

/// Random symmetric positive definite 9×9 matrix with eigenvalues in
/// `[lo, lo + spread]` (roughly).
pub fn spd9(rng: &mut ChaCha8Rng, lo: f64, spread: f64) -> Matrix9<f64> {
    let m = Matrix9::from_fn(|_, _| uniform(rng, 1.0));
    let q = m.qr().q();
    let d = Matrix9::from_diagonal(&Vector9::from_fn(|_, _| lo + rng.random_range(0.0..spread)));
    let p = q * d * q.transpose();
    (p + p.transpose()) * 0.5
}

pub fn skew_dense(v: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::new(0.0, -v.z, v.y, v.z, 0.0, -v.x, -v.y, v.x, 0.0)
}

/// Matrix exponential by truncated power series.
pub fn expm_series(a: &Matrix5<f64>, terms: usize) -> Matrix5<f64> {
    let mut sum = Matrix5::identity();
    let mut term = Matrix5::identity();
    for k in 1..terms {
        term = term * a / k as f64;
        sum += term;
    }
    sum
}

pub fn expm_tangent(xi: &AlgebraVector) -> Matrix5<f64> {
    expm_series(&wedge(xi), 30)
}

pub fn max_abs<const R: usize, const C: usize>(m: &SMatrix<f64, R, C>) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

use se23_mef::filter::{predict, Observation};
use se23_mef::harness::RunConfig;
use se23_mef::sim::{propagate_truth, sample_imu, sample_landmarks, SimRng};
use se23_mef::{FilterState, LandmarkBatch, LandmarkMap};

/// `Σᵢ ‖yᵢ − ŷᵢ‖²` for exact measurements of every landmark.
pub fn total_innovation(g_hat: &GroupElement, g_true: &GroupElement, map: &LandmarkMap) -> f64 {
    map.points()
        .iter()
        .map(|l| {
            let y = g_true.rot.transpose() * (l - g_true.pos);
            let y_hat = g_hat.rot.transpose() * (l - g_hat.pos);
            (y - y_hat).norm_squared()
        })
        .sum()
}

/// Batch of exact measurements of every landmark in `map`.
pub fn exact_batch(g_true: &GroupElement, map: &LandmarkMap, t: f64) -> LandmarkBatch {
    let observations = map
        .points()
        .iter()
        .enumerate()
        .map(|(index, l)| Observation {
            index,
            y: g_true.rot.transpose() * (l - g_true.pos),
        })
        .collect();
    LandmarkBatch::new(t, observations)
}

/// Filter/truth pair at one landmark instant.
pub struct Snapshot {
    pub t: f64,
    pub state: FilterState,
    pub truth: GroupElement,
}

/// Drives the filter against the configured trajectory for `seconds`,
/// applying `correct` at each landmark instant. Sensor noise follows the
/// config (use `noiseless()` for exact sensors). Returns the snapshots
/// taken right after each correction, preceded by the initial one.
pub fn drive<F>(
    config: &RunConfig,
    seconds: f64,
    mut correct: F,
) -> Result<Vec<Snapshot>, se23_mef::filter::FilterError>
where
    F: FnMut(&FilterState, &LandmarkBatch) -> Result<FilterState, se23_mef::filter::FilterError>,
{
    let sensors = &config.sensors;
    let dt = sensors.imu_dt();
    let per_batch = sensors.steps_per_landmark();
    let mut imu_noise = SimRng::seed_from_u64(1);
    let mut lm_noise = SimRng::seed_from_u64(2);
    let mut truth = config.trajectory.initial_sample();
    let mut state = se23_mef::filter::init(config.initial_estimate(&truth.g), config.p0(), 0.0)?;
    let mut out = vec![Snapshot {
        t: 0.0,
        state: state.clone(),
        truth: truth.g,
    }];
    let steps = (seconds * sensors.imu_rate).round() as usize;
    for k in 1..=steps {
        truth = propagate_truth(&truth, &config.trajectory, dt);
        let imu = sample_imu(&truth, &sensors.noise, &mut imu_noise);
        state = predict(&state, &imu, dt, &config.gains);
        if k % per_batch == 0 {
            let batch = sample_landmarks(&truth, sensors, &mut lm_noise);
            state = correct(&state, &batch)?;
            out.push(Snapshot {
                t: k as f64 * dt,
                state: state.clone(),
                truth: truth.g,
            });
        }
    }
    Ok(out)
}
