//! The competing maintenance strategies: the joint yaw and maintenance
//! optimizer, its zero-yaw restriction, its mean-scenario counterpart, and a
//! periodic schedule.

use serde::{Deserialize, Serialize};

use crate::milp::{
    build_with, solve, BuildOptions, MilpBackend, MilpConfig, MilpError, MilpInstance, MilpSolution, SolveStatus,
    TurbineBoundary,
};
use crate::scenario::{accessible, derive_with_rul, DeriveContext, ScenarioError, ScenarioSet, TurbineOutlook};
use crate::scenario::{WeatherPaths, STH_HOURS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolicyKind {
    /// Full stochastic model with yaw control.
    Posydon,
    /// Maintenance-only: every turbine runs at 0 degrees yaw.
    Stochos,
    /// The full model on a single mean scenario.
    Det,
    /// Periodic maintenance every fixed number of days.
    Tbs,
}

impl PolicyKind {
    pub const ALL: [PolicyKind; 4] = [PolicyKind::Posydon, PolicyKind::Stochos, PolicyKind::Det, PolicyKind::Tbs];

    pub fn name(self) -> &'static str {
        match self {
            PolicyKind::Posydon => "posydon",
            PolicyKind::Stochos => "stochos",
            PolicyKind::Det => "det",
            PolicyKind::Tbs => "tbs",
        }
    }

    pub fn uses_optimizer(self) -> bool {
        self != PolicyKind::Tbs
    }
}

impl std::fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for PolicyKind {
    type Err = PolicyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PolicyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| PolicyError::Unknown(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Policy {
    pub kind: PolicyKind,
    /// Days between periodic tasks; only read by the periodic schedule.
    pub tbs_interval_days: f64,
}

impl Policy {
    pub fn new(kind: PolicyKind, tbs_interval_days: f64) -> Result<Self, PolicyError> {
        let p = Self { kind, tbs_interval_days };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), PolicyError> {
        if !(self.tbs_interval_days.is_finite() && self.tbs_interval_days > 0.0) {
            return Err(PolicyError::Interval(self.tbs_interval_days));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PolicyError {
    #[error("unknown policy `{0}` (expected posydon, stochos, det or tbs)")]
    Unknown(String),
    #[error("periodic interval must be a positive number of days, got {0}")]
    Interval(f64),
    #[error(transparent)]
    Milp(#[from] MilpError),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
}

/// Everything a policy may look at when deciding one roll.
#[derive(Debug, Clone, Copy)]
pub struct DecisionInput<'a> {
    pub config: &'a MilpConfig,
    pub boundaries: &'a [TurbineBoundary],
    pub scenarios: &'a ScenarioSet,
    /// Needed to re-derive parameters for the mean scenario.
    pub derive: &'a DeriveContext<'a>,
    pub outlooks: &'a [TurbineOutlook],
}

/// The optimization model a policy solves, or `None` for the periodic schedule.
pub fn build_instance(policy: &Policy, input: &DecisionInput<'_>) -> Result<Option<MilpInstance>, PolicyError> {
    policy.validate()?;
    let (set, options) = match policy.kind {
        PolicyKind::Tbs => return Ok(None),
        PolicyKind::Posydon => (None, BuildOptions::default()),
        PolicyKind::Stochos => {
            let zero = zero_level(input.scenarios);
            (None, BuildOptions { pinned_yaw: Some(zero) })
        }
        PolicyKind::Det => (Some(mean_scenario(input.scenarios, input.derive, input.outlooks)?), BuildOptions::default()),
    };
    let set = set.as_ref().unwrap_or(input.scenarios);
    Ok(Some(build_with(input.config, input.boundaries, set, &options)?))
}

/// Decide one roll.
pub fn decide(policy: &Policy, input: &DecisionInput<'_>, backend: &dyn MilpBackend) -> Result<MilpSolution, PolicyError> {
    match build_instance(policy, input)? {
        Some(instance) => Ok(solve(&instance, backend)),
        None => Ok(tbs_schedule(policy.tbs_interval_days, input.boundaries, input.scenarios, input.derive)),
    }
}

fn zero_level(set: &ScenarioSet) -> usize {
    set.yaw_levels
        .iter()
        .position(|g| g.abs() < 1e-9)
        .expect("validated scenario sets have a 0 degree level")
}

/// One scenario whose trajectories are the per-hour means over `set` and whose
/// nominal RUL per turbine is the mean over scenarios; every other parameter is
/// derived from those means exactly as for a generated set.
pub fn mean_scenario(
    set: &ScenarioSet,
    ctx: &DeriveContext<'_>,
    outlooks: &[TurbineOutlook],
) -> Result<ScenarioSet, ScenarioError> {
    let ns = set.n_scenarios as f64;
    let mean_path = |rows: &[Vec<f64>]| -> Vec<Vec<f64>> {
        let len = rows.iter().map(Vec::len).min().unwrap_or(0);
        vec![(0..len).map(|h| rows.iter().map(|r| r[h]).sum::<f64>() / ns).collect()]
    };
    let paths = WeatherPaths {
        wind: mean_path(&set.wind),
        wave: mean_path(&set.wave),
        price: mean_path(&set.price),
    };
    let rul0: Vec<Vec<f64>> = (0..set.n_turbines)
        .map(|i| vec![(0..set.n_scenarios).map(|s| set.rul0(i, s)).sum::<f64>() / ns])
        .collect();
    derive_with_rul(&paths, set.n_days, ctx, outlooks, &rul0)
}

/// Periodic schedule: a turbine whose last completed maintenance is at least
/// `interval_days` old, or that is down after a failure, is maintained at the
/// first daylight hour that the scenario-mean weather makes accessible. Every
/// running turbine stays at 0 degrees yaw.
///
/// Only maintenance history, failure flags and weather are read; the
/// degradation belief is never consulted.
pub fn tbs_schedule(
    interval_days: f64,
    boundaries: &[TurbineBoundary],
    set: &ScenarioSet,
    ctx: &DeriveContext<'_>,
) -> MilpSolution {
    let n_i = set.n_turbines;
    let n_d = set.n_days;
    let n_s = set.n_scenarios;
    let zero = zero_level(set);
    let ns = n_s as f64;
    let mean = |rows: &[Vec<f64>], h: usize| rows.iter().map(|r| r[h]).sum::<f64>() / ns;
    let first_slot = (0..STH_HOURS).find(|&h| accessible(ctx.access, mean(&set.wind, h), mean(&set.wave, h), h));

    let mut sth_maintenance = vec![vec![false; n_i]; STH_HOURS];
    for (i, b) in boundaries.iter().enumerate() {
        let due = b.failed || b.days_since_maintenance >= interval_days;
        if due && !b.carried_task {
            if let Some(h) = first_slot {
                sth_maintenance[h][i] = true;
            }
        }
    }
    MilpSolution {
        status: SolveStatus::OptimalWithinGap,
        backend: "schedule".into(),
        objective: 0.0,
        breakdown: Default::default(),
        gap: None,
        sth_maintenance,
        sth_yaw: vec![vec![Some(zero); n_i]; STH_HOURS],
        lth_maintenance: vec![vec![vec![false; n_s]; n_i]; n_d],
        lth_yaw: vec![vec![vec![Some(zero); n_s]; n_i]; n_d],
        values: Vec::new(),
        message: Some("time-based schedule".into()),
    }
}
