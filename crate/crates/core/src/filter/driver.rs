use super::{
    predict, update, FilterError, FilterState, ImuSample, LandmarkBatch, LandmarkMap, NoiseGains,
};
use crate::Scalar;

/// Sequential front end that turns timestamped sensor streams into
/// predict/update calls.
///
/// Each IMU sample is held over the interval ending at its timestamp, so the
/// step length is the gap to the previous sample. A non-positive or
/// non-finite gap (first sample, repeated stamp) falls back to
/// `fallback_dt`. Landmark batches are applied at the current filter time.
#[derive(Debug, Clone)]
pub struct AsyncFilter<T: Scalar> {
    state: FilterState<T>,
    gains: NoiseGains<T>,
    map: LandmarkMap<T>,
    fallback_dt: T,
}

impl<T: Scalar> AsyncFilter<T> {
    pub fn new(
        state: FilterState<T>,
        gains: NoiseGains<T>,
        map: LandmarkMap<T>,
        fallback_dt: T,
    ) -> Self {
        Self {
            state,
            gains,
            map,
            fallback_dt,
        }
    }

    pub fn state(&self) -> &FilterState<T> {
        &self.state
    }

    pub fn gains(&self) -> &NoiseGains<T> {
        &self.gains
    }

    pub fn map(&self) -> &LandmarkMap<T> {
        &self.map
    }

    pub fn on_imu(&mut self, imu: &ImuSample<T>) {
        let gap = imu.t - self.state.t;
        let dt = if gap > T::zero() && gap.is_finite() {
            gap
        } else {
            self.fallback_dt
        };
        let mut next = predict(&self.state, imu, dt, &self.gains);
        if gap > T::zero() && gap.is_finite() {
            next.t = imu.t;
        }
        self.state = next;
    }

    /// Applies a landmark batch. On error the state is left untouched.
    pub fn on_landmarks(&mut self, batch: &LandmarkBatch<T>) -> Result<(), FilterError> {
        self.state = update(&self.state, batch, &self.map, &self.gains)?;
        Ok(())
    }
}
