use serde::{Deserialize, Serialize};

use super::build::MilpInstance;
use super::solver::SolveStatus;

/// The four signed parts of the objective; they sum to the objective value.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ObjectiveBreakdown {
    pub short_term_profit: f64,
    pub long_term_profit: f64,
    pub prolonged_interruptions: f64,
    pub end_of_horizon: f64,
}

impl ObjectiveBreakdown {
    pub fn from_terms(t: [f64; 4]) -> Self {
        Self {
            short_term_profit: t[0],
            long_term_profit: t[1],
            prolonged_interruptions: t[2],
            end_of_horizon: t[3],
        }
    }

    pub fn total(&self) -> f64 {
        self.short_term_profit + self.long_term_profit + self.prolonged_interruptions + self.end_of_horizon
    }
}

/// Typed decisions of one solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MilpSolution {
    pub status: SolveStatus,
    pub backend: String,
    pub objective: f64,
    pub breakdown: ObjectiveBreakdown,
    pub gap: Option<f64>,
    /// `[t][i]`
    pub sth_maintenance: Vec<Vec<bool>>,
    /// `[t][i]`: selected yaw level, `None` when the turbine is not run.
    pub sth_yaw: Vec<Vec<Option<usize>>>,
    /// `[d][i][s]`
    pub lth_maintenance: Vec<Vec<Vec<bool>>>,
    /// `[d][i][s]`
    pub lth_yaw: Vec<Vec<Vec<Option<usize>>>>,
    /// Raw column values in ledger order; empty when there are no decisions.
    #[serde(skip)]
    pub values: Vec<f64>,
    pub message: Option<String>,
}

impl MilpSolution {
    pub fn without_decisions(
        instance: &MilpInstance,
        status: SolveStatus,
        backend: &str,
        message: Option<String>,
    ) -> Self {
        let n = instance.dims();
        Self {
            status,
            backend: backend.to_string(),
            objective: f64::NAN,
            breakdown: ObjectiveBreakdown::default(),
            gap: None,
            sth_maintenance: vec![vec![false; n.turbines]; n.hours],
            sth_yaw: vec![vec![None; n.turbines]; n.hours],
            lth_maintenance: vec![vec![vec![false; n.scenarios]; n.turbines]; n.days],
            lth_yaw: vec![vec![vec![None; n.scenarios]; n.turbines]; n.days],
            values: Vec::new(),
            message,
        }
    }

    pub fn from_values(
        instance: &MilpInstance,
        values: Vec<f64>,
        status: SolveStatus,
        gap: Option<f64>,
        backend: &str,
        message: Option<String>,
    ) -> Self {
        let n = instance.dims();
        let l = &instance.layout;
        let on = |k: usize| values[k] > 0.5;
        let sth_maintenance = (0..n.hours).map(|t| (0..n.turbines).map(|i| on(l.maint(t, i))).collect()).collect();
        let sth_yaw = (0..n.hours)
            .map(|t| (0..n.turbines).map(|i| (0..n.levels).find(|&j| on(l.yaw(t, i, j)))).collect())
            .collect();
        let lth_maintenance = (0..n.days)
            .map(|d| {
                (0..n.turbines).map(|i| (0..n.scenarios).map(|s| on(l.maint_lth(d, i, s))).collect()).collect()
            })
            .collect();
        let lth_yaw = (0..n.days)
            .map(|d| {
                (0..n.turbines)
                    .map(|i| {
                        (0..n.scenarios).map(|s| (0..n.levels).find(|&j| on(l.yaw_lth(d, i, j, s)))).collect()
                    })
                    .collect()
            })
            .collect();
        let breakdown = ObjectiveBreakdown::from_terms(instance.objective_terms(&values));
        Self {
            status,
            backend: backend.to_string(),
            objective: breakdown.total(),
            breakdown,
            gap,
            sth_maintenance,
            sth_yaw,
            lth_maintenance,
            lth_yaw,
            values,
            message,
        }
    }

    pub fn has_decisions(&self) -> bool {
        !self.values.is_empty() || self.status.has_solution()
    }

    /// Value of ledger column `var`.
    pub fn value(&self, var: usize) -> f64 {
        self.values[var]
    }

    /// First short-term hour at which turbine `i` starts maintenance.
    pub fn sth_start(&self, i: usize) -> Option<usize> {
        self.sth_maintenance.iter().position(|row| row[i])
    }
}
