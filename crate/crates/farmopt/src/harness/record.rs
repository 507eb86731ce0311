//! Per-roll records and campaign metrics.

use serde::{Deserialize, Serialize};

use crate::milp::{Costs, SolveStatus};
use crate::policies::PolicyKind;
use crate::power::PowerModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TaskKind {
    Preventive,
    Corrective,
}

/// A maintenance task started during the roll.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TaskStart {
    pub turbine: usize,
    pub hour: usize,
    pub kind: TaskKind,
    /// Expected remaining full-load life (days) of the true blade when a
    /// preventive task begins.
    pub lost_life_days: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TurbineHour {
    pub turbine: usize,
    pub hour: usize,
}

/// The policy's view of one turbine at the start of the roll.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BeliefSummary {
    pub rul_mean_days: Option<f64>,
    pub observed_amplitude: f64,
    pub failed: bool,
    pub carried_hours: u32,
    pub elapsed_days: f64,
}

/// Realized cost components of one day.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DailyCost {
    pub repair: f64,
    pub crew: f64,
    pub overtime: f64,
    pub vessel: f64,
    pub revenue_loss: f64,
}

impl DailyCost {
    pub fn total(&self) -> f64 {
        self.repair + self.crew + self.overtime + self.vessel + self.revenue_loss
    }
}

/// Everything that happened on one simulated day.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RollRecord {
    pub policy: PolicyKind,
    pub seed: u64,
    pub roll: usize,
    pub status: SolveStatus,
    pub gap: Option<f64>,
    pub objective: Option<f64>,
    /// The solver gave no usable decisions and the fallback day was executed.
    pub degraded: bool,
    pub belief: Vec<BeliefSummary>,
    /// Executed short-term decisions `[t][i]`.
    pub maintenance: Vec<Vec<bool>>,
    pub yaw: Vec<Vec<Option<usize>>>,
    /// Realized hourly weather and price.
    pub wind: Vec<f64>,
    pub wave: Vec<f64>,
    pub price: Vec<f64>,
    /// Realized output `[t][i]`, MW.
    pub power_mw: Vec<Vec<f64>>,
    pub starts: Vec<TaskStart>,
    pub completions: Vec<TurbineHour>,
    pub failures: Vec<TurbineHour>,
    pub crew_hours: f64,
    pub overtime_hours: f64,
    pub vessel: bool,
    pub downtime_hours: u32,
    pub access_downtime_hours: u32,
    pub production_mwh: f64,
    pub baseline_mwh: f64,
    pub revenue: f64,
    pub baseline_revenue: f64,
    pub cost: DailyCost,
}

/// Campaign totals for one policy against one truth.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OmMetrics {
    pub policy: PolicyKind,
    pub seed: u64,
    pub rolls: usize,
    pub total_cost: f64,
    pub revenue_loss: f64,
    pub production_loss_mwh: f64,
    pub downtime_days: f64,
    pub access_downtime_days: f64,
    pub lost_cycle_days_per_task: Option<f64>,
    pub maintenance_count: usize,
    pub corrective_count: usize,
    pub vessel_rentals: usize,
    pub failures: usize,
    pub degraded_rolls: usize,
    pub repair_cost: f64,
    pub crew_cost: f64,
    pub overtime_cost: f64,
    pub vessel_cost: f64,
    pub production_mwh: f64,
    pub baseline_mwh: f64,
}

impl OmMetrics {
    /// Sum the per-roll components.
    pub fn from_records(policy: PolicyKind, seed: u64, records: &[RollRecord]) -> Self {
        let mut m = Self {
            policy,
            seed,
            rolls: records.len(),
            total_cost: 0.0,
            revenue_loss: 0.0,
            production_loss_mwh: 0.0,
            downtime_days: 0.0,
            access_downtime_days: 0.0,
            lost_cycle_days_per_task: lost_cycle_days(records),
            maintenance_count: 0,
            corrective_count: 0,
            vessel_rentals: 0,
            failures: 0,
            degraded_rolls: 0,
            repair_cost: 0.0,
            crew_cost: 0.0,
            overtime_cost: 0.0,
            vessel_cost: 0.0,
            production_mwh: 0.0,
            baseline_mwh: 0.0,
        };
        let (mut down, mut access) = (0u64, 0u64);
        for r in records {
            m.total_cost += r.cost.total();
            m.revenue_loss += r.cost.revenue_loss;
            m.repair_cost += r.cost.repair;
            m.crew_cost += r.cost.crew;
            m.overtime_cost += r.cost.overtime;
            m.vessel_cost += r.cost.vessel;
            m.production_mwh += r.production_mwh;
            m.baseline_mwh += r.baseline_mwh;
            down += u64::from(r.downtime_hours);
            access += u64::from(r.access_downtime_hours);
            m.maintenance_count += r.starts.len();
            m.corrective_count += r.starts.iter().filter(|s| s.kind == TaskKind::Corrective).count();
            m.vessel_rentals += usize::from(r.vessel);
            m.failures += r.failures.len();
            m.degraded_rolls += usize::from(r.degraded);
        }
        m.production_loss_mwh = m.baseline_mwh - m.production_mwh;
        m.downtime_days = down as f64 / 24.0;
        m.access_downtime_days = access as f64 / 24.0;
        m
    }
}

/// Mean lost life per preventive task, in days; `None` without preventive tasks.
pub fn lost_cycle_days(records: &[RollRecord]) -> Option<f64> {
    let lost: Vec<f64> = records.iter().flat_map(|r| r.starts.iter().filter_map(|s| s.lost_life_days)).collect();
    (!lost.is_empty()).then(|| lost.iter().sum::<f64>() / lost.len() as f64)
}

/// Residuals between reported totals and totals rebuilt from raw record fields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Audit {
    /// Reported total cost minus the rebuilt one.
    pub cost: f64,
    /// Hourly realized output plus reported lost production, minus the zero-yaw,
    /// always-available production.
    pub energy: f64,
    /// Reported revenue loss minus price-weighted lost output.
    pub revenue: f64,
}

/// Rebuild cost and energy totals from the hourly record fields alone: task
/// kinds, crew hours, vessel days, realized power, prices and the truth wind.
pub fn audit(metrics: &OmMetrics, records: &[RollRecord], costs: &Costs, power: &PowerModel) -> Audit {
    let rated = power.rated_capacity();
    let mut cost = 0.0;
    let mut realized = 0.0;
    let mut baseline = 0.0;
    let mut lost_revenue = 0.0;
    for r in records {
        for s in &r.starts {
            cost += match s.kind {
                TaskKind::Preventive => costs.preventive,
                TaskKind::Corrective => costs.corrective,
            };
        }
        cost += costs.crew_hourly * r.crew_hours + costs.overtime_hourly * r.overtime_hours;
        if r.vessel {
            cost += costs.vessel_daily;
        }
        for (t, row) in r.power_mw.iter().enumerate() {
            let full = rated * power.scaled_power(r.wind[t], 0.0);
            for &p in row {
                realized += p;
                baseline += full;
                lost_revenue += r.price[t] * (full - p);
            }
        }
    }
    cost += lost_revenue;
    Audit {
        cost: metrics.total_cost - cost,
        energy: realized + metrics.production_loss_mwh - baseline,
        revenue: metrics.revenue_loss - lost_revenue,
    }
}
