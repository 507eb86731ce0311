//! Brownian degradation with conjugate Bayesian updating, inverse-Gaussian
//! remaining life, and the load-driven time transformation.

mod load;
mod path;
mod prior;
mod rul;

pub use load::{
    relative_rul_factor, FactorLookup, LoadFactorTable, SyntheticLoad, NOMINAL_WIND_MS,
    NOMINAL_YAW_DEG,
};
pub use path::{simulate_first_passage, step_amplitude};
pub use prior::{batch_posterior, update_posterior, BaselinePrior, DegradationState};
pub use rul::{
    first_passage_params, nominal_rul, rul_after_loading, sample_rul, sample_rul_with,
    LoadedPeriod, RulDistribution, HOURS_PER_DAY,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DegradationError {
    #[error("invalid prior: {0}")]
    InvalidPrior(String),
    #[error("failure threshold must be positive, got {0}")]
    InvalidThreshold(f64),
    #[error("observation time {new} does not follow the last observation at {last}")]
    NonIncreasingTime { last: f64, new: f64 },
    #[error("observation ({0}, {1}) is not finite")]
    InvalidObservation(f64, f64),
    #[error("amplitude {amplitude} already at or above the failure threshold {threshold}")]
    AlreadyFailed { amplitude: f64, threshold: f64 },
    #[error("posterior drift {0} is not positive")]
    NonPositiveDrift(f64),
    #[error("remaining life must be finite and nonnegative, got {0}")]
    InvalidRul(f64),
    #[error("relative-RUL factor must be finite and nonnegative, got {0}")]
    InvalidFactor(f64),
    #[error("invalid load table: {0}")]
    InvalidLoadTable(String),
    #[error("yaw level {0} is outside the load table")]
    YawLevelOutOfRange(usize),
    #[error("wind speed must be finite and nonnegative, got {0}")]
    InvalidWind(f64),
    #[error("{0}")]
    Io(String),
}
