//! Weather, price and RUL scenario trajectories and the per-scenario
//! parameters derived from them (scaled power, relative-RUL factors, mission times).

mod access;
mod io;
mod set;
mod weather;

pub use access::{accessible, mission_time, AccessRule, MissionTime};
pub use io::{load_paths, read_variable, save_paths, write_variable};
pub use set::{
    derive_parameters, derive_with_rul, DeriveContext, DeriveDiagnostics, ScenarioSet,
    TurbineOutlook, STH_HOURS,
};
pub use weather::{daily_means, generate, SeriesModel, WeatherModel, WeatherPaths, WeatherState};

use crate::degradation::DegradationError;
use crate::power::PowerError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScenarioError {
    #[error("invalid weather model: {0}")]
    InvalidModel(String),
    #[error("invalid access rule: {0}")]
    InvalidAccess(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("scenario file: {0}")]
    Io(String),
    #[error(transparent)]
    Degradation(#[from] DegradationError),
    #[error(transparent)]
    Power(#[from] PowerError),
}
