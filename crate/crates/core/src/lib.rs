//! Second-order minimum-energy filtering on the extended pose group SE₂(3).
//!
//! The crate is organized bottom-up:
//!
//! - [`lie`]: SE₂(3), its Lie algebra, and the matrix operators used by the filter.
//! - [`filter`]: the minimum-energy filter with IMU prediction and discrete
//!   landmark updates.
//! - [`sim`]: ground-truth trajectories and seeded sensor simulation.
//! - [`harness`]: configuration, trial running, error metrics, and CSV output.
//!
//! The group and filter code is generic over [`Scalar`]; the aliases below fix
//! it to `f64` (and `f32` where single precision is useful).

pub mod filter;
pub mod harness;
pub mod lie;
mod scalar;
pub mod sim;

pub use scalar::Scalar;

pub type GroupElement = lie::Se23<f64>;
pub type AlgebraVector = lie::Se23Tangent<f64>;
pub type HomogeneousPoint = lie::HomogeneousPoint<f64>;
pub type FilterState = filter::FilterState<f64>;
pub type NoiseGains = filter::NoiseGains<f64>;
pub type LandmarkMap = filter::LandmarkMap<f64>;
pub type ImuSample = filter::ImuSample<f64>;
pub type LandmarkBatch = filter::LandmarkBatch<f64>;

pub type GroupElementF32 = lie::Se23<f32>;
pub type AlgebraVectorF32 = lie::Se23Tangent<f32>;
pub type FilterStateF32 = filter::FilterState<f32>;
