//! `key = value` run configuration.
//!
//! One entry per line, `#` starts a comment, vectors are comma separated and
//! the landmark list is a semicolon-separated list of triples. Missing keys
//! fall back to the reference scenario in [`RunConfig::default`].

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use nalgebra::{Matrix3, Vector3};
use thiserror::Error;

use crate::filter::FilterError;
use crate::lie::so3::exp_so3;
use crate::sim::{SensorNoise, SensorSpec, SimError, TrajectorySpec};
use crate::{AlgebraVector, GroupElement, LandmarkMap, NoiseGains};

pub const KEYS: &[&str] = &[
    "imu_rate_hz",
    "landmark_rate_hz",
    "duration_s",
    "b_omega",
    "b_a",
    "d_gain",
    "alpha",
    "p0_diag",
    "landmarks",
    "omega_body",
    "a_body",
    "v0",
    "init_offset",
    "seed",
    "trials",
    "dropout",
    "noise_scale",
];

const DEFAULT_CONFIG: &str = "\
imu_rate_hz = 1000
landmark_rate_hz = 10
duration_s = 20
b_omega = 0.1
b_a = 0.1
d_gain = 0.5
alpha = 0.1
p0_diag = 1e-3, 1e-3, 1e-3, 3, 3, 3, 5, 5, 5
landmarks = 10, 0, 0; 0, 10, 0; 0, 0, 10; 10, 10, 10
omega_body = 0, 0, 0.3
a_body = 0, 0, 0
v0 = 1, 0, 0
init_offset = 0.12, 0, 0.16, 0, 0, 0, 3, 2, 1.2
seed = 1
trials = 1
dropout = 0
noise_scale = 1
";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: expected `key = value`")]
    Malformed { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: key `{key}` given twice")]
    DuplicateKey { line: usize, key: String },
    #[error("line {line}: bad value for `{key}`: {reason}")]
    BadValue {
        line: usize,
        key: String,
        reason: String,
    },
    #[error("invalid filter settings: {0}")]
    Filter(#[from] FilterError),
    #[error("invalid simulation settings: {0}")]
    Sim(#[from] SimError),
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("initial rotation offset must be below π")]
    OffsetTooLarge,
}

/// Everything needed to run one or more simulated trials.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub trajectory: TrajectorySpec,
    pub sensors: SensorSpec,
    /// Noise model and update weight the filter is tuned with.
    pub gains: NoiseGains,
    /// Displacement of the initial estimate from the truth: rotation vector
    /// applied on the right of `R₀`, additive velocity and position offsets.
    pub init_offset: AlgebraVector,
    pub p0_diag: [f64; 9],
    pub trials: usize,
    /// Multiplier on the simulated sensor noise; 0 gives exact sensors.
    pub noise_scale: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self::parse(DEFAULT_CONFIG).expect("built-in config parses")
    }
}

struct Entry<'a> {
    line: usize,
    key: &'a str,
    value: &'a str,
}

impl Entry<'_> {
    fn bad(&self, reason: impl Into<String>) -> ConfigError {
        ConfigError::BadValue {
            line: self.line,
            key: self.key.to_string(),
            reason: reason.into(),
        }
    }

    fn floats(&self) -> Result<Vec<f64>, ConfigError> {
        self.value
            .split(',')
            .map(|s| {
                let v: f64 = s
                    .trim()
                    .parse()
                    .map_err(|_| self.bad(format!("`{}` is not a number", s.trim())))?;
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(self.bad("value must be finite"))
                }
            })
            .collect()
    }

    fn scalar(&self) -> Result<f64, ConfigError> {
        match self.floats()?.as_slice() {
            [x] => Ok(*x),
            v => Err(self.bad(format!("expected 1 number, got {}", v.len()))),
        }
    }

    fn fixed<const N: usize>(&self) -> Result<[f64; N], ConfigError> {
        let v = self.floats()?;
        v.as_slice()
            .try_into()
            .map_err(|_| self.bad(format!("expected {N} numbers, got {}", v.len())))
    }

    fn vec3(&self) -> Result<Vector3<f64>, ConfigError> {
        Ok(Vector3::from(self.fixed::<3>()?))
    }

    /// A scalar (times identity), a diagonal triple, or a row-major 3×3.
    fn matrix3(&self) -> Result<Matrix3<f64>, ConfigError> {
        let v = self.floats()?;
        match v.len() {
            1 => Ok(Matrix3::identity() * v[0]),
            3 => Ok(Matrix3::from_diagonal(&Vector3::new(v[0], v[1], v[2]))),
            9 => Ok(Matrix3::from_row_slice(&v)),
            n => Err(self.bad(format!("expected 1, 3 or 9 numbers, got {n}"))),
        }
    }

    fn unsigned(&self) -> Result<u64, ConfigError> {
        self.value
            .trim()
            .parse()
            .map_err(|_| self.bad("expected a non-negative integer"))
    }

    fn landmarks(&self) -> Result<Vec<Vector3<f64>>, ConfigError> {
        self.value
            .split(';')
            .map(|triple| {
                let sub = Entry {
                    line: self.line,
                    key: self.key,
                    value: triple,
                };
                sub.vec3()
            })
            .collect()
    }
}

fn parse_entries(text: &str) -> Result<Vec<Entry<'_>>, ConfigError> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (key, value) = body
            .split_once('=')
            .ok_or(ConfigError::Malformed { line })?;
        let key = key.trim();
        if !KEYS.contains(&key) {
            return Err(ConfigError::UnknownKey {
                line,
                key: key.to_string(),
            });
        }
        if !seen.insert(key) {
            return Err(ConfigError::DuplicateKey {
                line,
                key: key.to_string(),
            });
        }
        out.push(Entry {
            line,
            key,
            value: value.trim(),
        });
    }
    Ok(out)
}

impl RunConfig {
    /// Parses a config, filling unspecified keys from the defaults.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let defaults = parse_entries(DEFAULT_CONFIG)?;
        let overrides = parse_entries(text)?;
        let lookup = |key: &str| -> &Entry {
            overrides
                .iter()
                .find(|e| e.key == key)
                .or_else(|| defaults.iter().find(|e| e.key == key))
                .expect("every key has a default")
        };

        let imu_rate = lookup("imu_rate_hz").scalar()?;
        let landmark_rate = lookup("landmark_rate_hz").scalar()?;
        let duration = lookup("duration_s").scalar()?;
        let gains = NoiseGains::new(
            lookup("b_omega").matrix3()?,
            lookup("b_a").matrix3()?,
            lookup("d_gain").matrix3()?,
            lookup("alpha").scalar()?,
        )?;
        let p0_diag = lookup("p0_diag").fixed::<9>()?;
        let landmarks = LandmarkMap::new(lookup("landmarks").landmarks()?)?;
        let omega_body = lookup("omega_body").vec3()?;
        let a_body = lookup("a_body").vec3()?;
        let v0 = lookup("v0").vec3()?;
        let offset = lookup("init_offset").fixed::<9>()?;
        let seed = lookup("seed").unsigned()?;
        let trials = lookup("trials").unsigned()? as usize;
        let dropout = lookup("dropout").scalar()?;
        let noise_scale = lookup("noise_scale").scalar()?;

        let mut g0 = GroupElement::identity();
        g0.vel = v0;
        let config = Self {
            trajectory: TrajectorySpec::new(g0, omega_body, a_body, duration)?,
            sensors: SensorSpec {
                imu_rate,
                landmark_rate,
                noise: SensorNoise::from_gains(&gains, noise_scale),
                landmarks,
                dropout,
                seed,
            },
            gains,
            init_offset: AlgebraVector::from_vector(&offset.into()),
            p0_diag,
            trials,
            noise_scale,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.sensors.validate()?;
        if !(self.noise_scale >= 0.0 && self.noise_scale.is_finite()) {
            return Err(SimError::BadNoiseScale(self.noise_scale).into());
        }
        if self.trials == 0 {
            return Err(ConfigError::NoTrials);
        }
        if self.init_offset.rot.norm() >= std::f64::consts::PI {
            return Err(ConfigError::OffsetTooLarge);
        }
        crate::filter::init(GroupElement::identity(), self.p0(), 0.0)?;
        Ok(())
    }

    pub fn p0(&self) -> crate::lie::Matrix9<f64> {
        crate::lie::Matrix9::from_diagonal(&self.p0_diag.into())
    }

    /// Initial estimate displaced from `truth` by [`init_offset`](Self::init_offset).
    pub fn initial_estimate(&self, truth: &GroupElement) -> GroupElement {
        GroupElement {
            rot: truth.rot * exp_so3(&self.init_offset.rot),
            vel: truth.vel + self.init_offset.vel,
            pos: truth.pos + self.init_offset.pos,
        }
        .renormalized()
    }

    /// Same scenario with exact sensors.
    pub fn noiseless(&self) -> Self {
        let mut c = self.clone();
        c.noise_scale = 0.0;
        c.sensors.noise = SensorNoise::zero();
        c
    }

    /// Same scenario with the estimate initialized at the truth.
    pub fn perfectly_initialized(&self) -> Self {
        let mut c = self.clone();
        c.init_offset = AlgebraVector::zero();
        c
    }

    pub fn imu_steps(&self) -> usize {
        (self.trajectory.duration * self.sensors.imu_rate).round() as usize
    }
}
