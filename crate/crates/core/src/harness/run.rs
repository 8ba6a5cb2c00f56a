//! Single and Monte-Carlo trial execution.

use rayon::prelude::*;
use thiserror::Error;

use super::config::RunConfig;
use super::metrics::{ErrorRecord, ErrorTrace};
use crate::filter::{init, is_positive_definite, AsyncFilter, FilterError};
use crate::sim::{imu_rng, landmark_rng, propagate_truth, sample_imu, sample_landmarks};

#[derive(Debug, Clone, PartialEq, Error)]
#[error("trial with seed {seed} diverged at t = {t}: {source}")]
pub struct TrialError {
    pub seed: u64,
    pub t: f64,
    #[source]
    pub source: FilterError,
}

/// Worst-case structural quantities observed over a trial.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Diagnostics {
    /// `max ‖P - Pᵀ‖_∞` (entry-wise).
    pub max_p_asymmetry: f64,
    /// Smallest eigenvalue of `P` seen after any step.
    pub min_p_eigenvalue: f64,
    /// `max ‖RᵀR - I‖_F` over estimate and truth.
    pub max_orthonormality_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialReport {
    pub seed: u64,
    pub trace: ErrorTrace,
    pub diagnostics: Diagnostics,
}

/// Runs one trial and returns its error history.
pub fn run_trial(config: &RunConfig, seed: u64) -> Result<ErrorTrace, TrialError> {
    run_trial_report(config, seed).map(|r| r.trace)
}

/// Runs one trial, also tracking symmetry, definiteness and orthonormality.
///
/// Every IMU step propagates the truth, samples the IMU and predicts; every
/// `imu_rate / landmark_rate` steps a landmark batch is sampled and applied.
/// Loss of positive definiteness after either step aborts the trial.
pub fn run_trial_report(config: &RunConfig, seed: u64) -> Result<TrialReport, TrialError> {
    let traj = &config.trajectory;
    let sensors = &config.sensors;
    let dt = sensors.imu_dt();
    let per_batch = sensors.steps_per_landmark();
    let mut imu_noise = imu_rng(seed);
    let mut lm_noise = landmark_rng(seed);

    let fail = |t: f64, source: FilterError| TrialError { seed, t, source };

    let mut truth = traj.initial_sample();
    let start =
        init(config.initial_estimate(&truth.g), config.p0(), 0.0).map_err(|e| fail(0.0, e))?;
    let mut filter = AsyncFilter::new(start, config.gains.clone(), sensors.landmarks.clone(), dt);

    let steps = config.imu_steps();
    let mut records = Vec::with_capacity(steps + 1);
    records.push(ErrorRecord::between(0.0, &filter.state().g_hat, &truth.g));
    let mut diag = Diagnostics {
        min_p_eigenvalue: f64::INFINITY,
        ..Default::default()
    };
    let observe =
        |diag: &mut Diagnostics, filter: &AsyncFilter<f64>, t: f64| -> Result<(), TrialError> {
            let p = &filter.state().p;
            if !is_positive_definite(p) {
                return Err(fail(t, FilterError::NotPositiveDefinite { t }));
            }
            diag.max_p_asymmetry = diag.max_p_asymmetry.max((p - p.transpose()).abs().max());
            diag.min_p_eigenvalue = diag.min_p_eigenvalue.min(p.symmetric_eigenvalues().min());
            Ok(())
        };

    for k in 1..=steps {
        let t = k as f64 / sensors.imu_rate;
        truth = propagate_truth(&truth, traj, dt);
        truth.t = t;
        let imu = sample_imu(&truth, &sensors.noise, &mut imu_noise);
        filter.on_imu(&imu);
        observe(&mut diag, &filter, t)?;

        if k % per_batch == 0 {
            let batch = sample_landmarks(&truth, sensors, &mut lm_noise);
            filter.on_landmarks(&batch).map_err(|e| fail(t, e))?;
            observe(&mut diag, &filter, t)?;
        }

        diag.max_orthonormality_error = diag
            .max_orthonormality_error
            .max(filter.state().g_hat.orthonormality_error())
            .max(truth.g.orthonormality_error());
        records.push(ErrorRecord::between(t, &filter.state().g_hat, &truth.g));
    }

    Ok(TrialReport {
        seed,
        trace: ErrorTrace { records },
        diagnostics: diag,
    })
}

/// Seed of trial `index` in a Monte-Carlo batch.
pub fn trial_seed(base: u64, index: usize) -> u64 {
    base.wrapping_add(index as u64)
}

/// Per-timestep mean and (population) standard deviation across trials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AggregateRecord {
    pub t: f64,
    pub translation_mean: f64,
    pub translation_std: f64,
    pub rotation_mean: f64,
    pub rotation_std: f64,
    pub velocity_mean: f64,
    pub velocity_std: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloResult {
    pub aggregate: Vec<AggregateRecord>,
    pub reports: Vec<TrialReport>,
    pub flagged: Vec<TrialError>,
}

/// Running (Welford) mean and population standard deviation; identical
/// inputs give exactly zero spread.
fn mean_std(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (mut n, mut mean, mut m2) = (0.0, 0.0, 0.0);
    for v in values {
        n += 1.0;
        let delta = v - mean;
        mean += delta / n;
        m2 += delta * (v - mean);
    }
    (mean, (m2 / n).max(0.0).sqrt())
}

/// Reduces equally long traces step by step, in the given order.
pub fn aggregate(traces: &[ErrorTrace]) -> Vec<AggregateRecord> {
    let Some(first) = traces.first() else {
        return Vec::new();
    };
    debug_assert!(traces.iter().all(|t| t.len() == first.len()));
    (0..first.len())
        .map(|i| {
            let col = traces.iter().map(move |t| t.records[i]);
            let (translation_mean, translation_std) = mean_std(col.clone().map(|r| r.translation));
            let (rotation_mean, rotation_std) = mean_std(col.clone().map(|r| r.rotation));
            let (velocity_mean, velocity_std) = mean_std(col.map(|r| r.velocity));
            AggregateRecord {
                t: first.records[i].t,
                translation_mean,
                translation_std,
                rotation_mean,
                rotation_std,
                velocity_mean,
                velocity_std,
            }
        })
        .collect()
}

/// Runs `trials` independent trials with seeds derived from the config seed.
///
/// Trials run in parallel; results are gathered in trial order so the
/// aggregate does not depend on scheduling. Diverged trials are reported in
/// `flagged` and left out of the aggregate.
pub fn run_monte_carlo(config: &RunConfig, trials: usize) -> MonteCarloResult {
    let base = config.sensors.seed;
    let outcomes: Vec<_> = (0..trials)
        .into_par_iter()
        .map(|i| run_trial_report(config, trial_seed(base, i)))
        .collect();

    let mut reports = Vec::new();
    let mut flagged = Vec::new();
    for outcome in outcomes {
        match outcome {
            Ok(r) => reports.push(r),
            Err(e) => flagged.push(e),
        }
    }
    let traces: Vec<_> = reports.iter().map(|r| r.trace.clone()).collect();
    MonteCarloResult {
        aggregate: aggregate(&traces),
        reports,
        flagged,
    }
}
