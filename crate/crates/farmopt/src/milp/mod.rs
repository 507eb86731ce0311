//! The two-horizon stochastic maintenance and yaw-control MILP: ledger
//! construction, solving through a backend, and post-solve checks.
//!
//! Hours are 0-based in code (`k = t - 1` for the 1-based hour `t` of the
//! algebra); long-term day index `d` is day number `d + 1`.

mod build;
mod config;
mod dmc;
mod layout;
mod ledger;
mod lp;
mod solution;
mod solver;
mod verify;

pub use build::{build, build_with, BuildOptions, MilpInstance, RulBounds};
pub use config::{BigMPolicy, Costs, MilpConfig, TurbineBoundary};
pub use dmc::{dmc_direct, ZetaCounts};
pub use layout::{index_tuples, Dims, Layout};
pub use ledger::{ObjectiveTerm, Row, RowFamily, Sense, VarFamily, VarKind, Variable};
pub use lp::{to_lp_string, write_lp};
pub use solution::{MilpSolution, ObjectiveBreakdown};
pub use solver::{
    backend_by_name, solve, BackendOutcome, HighsBackend, MilpBackend, ModelView, SolveLimits, SolveStatus,
};
pub use verify::{verify_solution, VerifyReport, ViolatedRow, ROW_TOLERANCE};

use crate::scenario::ScenarioError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MilpError {
    #[error("invalid optimizer config: {0}")]
    Config(String),
    #[error("invalid boundary for turbine {0}: {1}")]
    Boundary(usize, String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("division by zero: {0}")]
    Division(String),
    #[error("unsupported MILP backend `{0}` (available: highs)")]
    UnsupportedBackend(String),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
}
