//! Closed-loop evaluation: a simulated farm with hidden true degradation and
//! weather, on which each policy decides one day at a time.

mod campaign;
mod output;
mod record;
mod truth;

pub use campaign::{compare_policies, run_campaign, Campaign, CampaignOutcome, RollInputs};
pub use output::{read_rolls_jsonl, write_metrics_csv, write_outcomes, write_rolls_jsonl, METRICS_COLUMNS};
pub use record::{
    audit, lost_cycle_days, Audit, BeliefSummary, DailyCost, OmMetrics, RollRecord, TaskKind, TaskStart, TurbineHour,
};
pub use truth::{daily_shocks, TruthBlade, TruthWeather};

use crate::config::ConfigError;
use crate::degradation::DegradationError;
use crate::policies::PolicyError;
use crate::scenario::ScenarioError;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Degradation(#[from] DegradationError),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Policy(#[from] PolicyError),
    #[error("{0}")]
    Input(String),
    #[error("cannot write {path}: {message}")]
    Io { path: std::path::PathBuf, message: String },
}
