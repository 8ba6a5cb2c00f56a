use crate::lie::so3::vex_unchecked;
use crate::GroupElement;

/// `‖x̂ - x‖₂` in metres.
pub fn translation_error(g_hat: &GroupElement, g_true: &GroupElement) -> f64 {
    (g_hat.pos - g_true.pos).norm()
}

/// `‖v̂ - v‖₂` in metres per second.
pub fn velocity_error(g_hat: &GroupElement, g_true: &GroupElement) -> f64 {
    (g_hat.vel - g_true.vel).norm()
}

/// Geodesic angle between the two attitudes, in `[0, π]`.
///
/// Equal to `arccos((tr(R̂ᵀR) - 1) / 2)`, evaluated through `atan2` so that
/// small angles keep full precision.
pub fn rotation_error(g_hat: &GroupElement, g_true: &GroupElement) -> f64 {
    let rel = g_hat.rot.transpose() * g_true.rot;
    let cos = ((rel.trace() - 1.0) / 2.0).clamp(-1.0, 1.0);
    let sin = vex_unchecked(&rel).norm();
    sin.atan2(cos)
}

/// Errors of one estimate against the truth at time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorRecord {
    pub t: f64,
    pub translation: f64,
    pub rotation: f64,
    pub velocity: f64,
}

impl ErrorRecord {
    pub fn between(t: f64, g_hat: &GroupElement, g_true: &GroupElement) -> Self {
        Self {
            t,
            translation: translation_error(g_hat, g_true),
            rotation: rotation_error(g_hat, g_true),
            velocity: velocity_error(g_hat, g_true),
        }
    }

    pub fn max_error(&self) -> f64 {
        self.translation.max(self.rotation).max(self.velocity)
    }
}

/// Per-step error history of one trial.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ErrorTrace {
    pub records: Vec<ErrorRecord>,
}

/// Mean errors over a window of a trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorSummary {
    pub translation: f64,
    pub rotation: f64,
    pub velocity: f64,
}

impl ErrorTrace {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Mean over records in the second half of the run (`t ≥ t_end / 2`).
    pub fn converged_mean(&self) -> Option<ErrorSummary> {
        let (first, last) = (self.records.first()?, self.records.last()?);
        let cut = first.t + 0.5 * (last.t - first.t);
        let tail: Vec<_> = self.records.iter().filter(|r| r.t >= cut).collect();
        let n = tail.len() as f64;
        Some(ErrorSummary {
            translation: tail.iter().map(|r| r.translation).sum::<f64>() / n,
            rotation: tail.iter().map(|r| r.rotation).sum::<f64>() / n,
            velocity: tail.iter().map(|r| r.velocity).sum::<f64>() / n,
        })
    }

    /// First time after which every error stays below `tol`.
    pub fn settling_time(&self, tol: f64) -> Option<f64> {
        let last_bad = self.records.iter().rposition(|r| r.max_error() >= tol);
        match last_bad {
            None => self.records.first().map(|r| r.t),
            Some(i) => self.records.get(i + 1).map(|r| r.t),
        }
    }
}
