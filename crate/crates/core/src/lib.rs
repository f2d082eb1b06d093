//! Exact learning of concept classes with quantum membership queries: the
//! impatient (single-query) measurement, its amplified version, and the
//! spectral machinery for group-symmetric families.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the scalar to `f64`.

pub mod amplify;
pub mod analysis;
pub mod concepts;
pub mod error;
pub mod group_algebra;
pub mod measurement;
pub mod numkit;
pub mod scalar;

pub use error::{Error, Result, Warning};
pub use scalar::Real;

pub type ComplexMatrix = numkit::Matrix<f64>;
pub type Spectrum = numkit::Spectrum<f64>;
pub type GroupSymbol = group_algebra::GroupSymbol<f64>;
pub type MeasurementPlan = measurement::MeasurementPlan<f64>;
pub type AmplifyReport = amplify::AmplifyReport<f64>;
pub type SweepRow = analysis::SweepRow<f64>;
