use serde::{Deserialize, Serialize};

use super::MilpError;

/// Cost coefficients of the optimization model (currency units).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Costs {
    /// Preventive repair cost.
    #[serde(rename = "C_PM")]
    pub preventive: f64,
    /// Corrective repair cost.
    #[serde(rename = "C_CM")]
    pub corrective: f64,
    /// Crew hourly rate.
    #[serde(rename = "C_x")]
    pub crew_hourly: f64,
    /// Overtime hourly rate.
    #[serde(rename = "C_q")]
    pub overtime_hourly: f64,
    /// Daily vessel rental.
    #[serde(rename = "C_r")]
    pub vessel_daily: f64,
    /// Value of one day of remaining life beyond the horizon.
    #[serde(rename = "C_lambda")]
    pub rul_daily: f64,
    /// Upfront cost of a task interrupted into the long-term horizon; defaults to `C_r`.
    #[serde(rename = "U", default, skip_serializing_if = "Option::is_none")]
    pub interruption_upfront: Option<f64>,
    /// Hourly loss while an interrupted task waits; defaults to mean price times rated capacity.
    #[serde(rename = "Y", default, skip_serializing_if = "Option::is_none")]
    pub interruption_hourly: Option<f64>,
}

impl Default for Costs {
    fn default() -> Self {
        Self {
            preventive: 4000.0,
            corrective: 10000.0,
            crew_hourly: 250.0,
            overtime_hourly: 125.0,
            vessel_daily: 2500.0,
            rul_daily: 30.0,
            interruption_upfront: None,
            interruption_hourly: None,
        }
    }
}

/// How big-M coefficients are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BigMPolicy {
    /// Smallest valid value per constraint, from variable bounds and instance data.
    Tight,
    /// One value for every big-M coefficient.
    Global(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MilpConfig {
    pub costs: Costs,
    /// Maximum number of crews.
    #[serde(rename = "N_x")]
    pub crews: u32,
    /// Regular work hours per crew and day.
    #[serde(rename = "N_q")]
    pub regular_hours: f64,
    /// Overtime hours per day.
    #[serde(rename = "N_H")]
    pub overtime_cap: f64,
    /// RUL threshold (days) below which a turbine must be scheduled.
    #[serde(rename = "N_theta")]
    pub theta_threshold: f64,
    /// Hour of last light; crews are released from this hour on.
    pub last_light: usize,
    pub big_m: BigMPolicy,
    /// Treat the short-term overtime variable as continuous.
    pub relax_overtime: bool,
    pub mip_gap: f64,
    pub time_limit_secs: f64,
}

impl Default for MilpConfig {
    fn default() -> Self {
        Self {
            costs: Costs::default(),
            crews: 2,
            regular_hours: 8.0,
            overtime_cap: 8.0,
            theta_threshold: 10.0,
            last_light: 21,
            big_m: BigMPolicy::Tight,
            relax_overtime: true,
            mip_gap: 0.001,
            time_limit_secs: 1800.0,
        }
    }
}

impl MilpConfig {
    pub fn validate(&self) -> Result<(), MilpError> {
        let c = &self.costs;
        let named = [
            ("C_PM", c.preventive),
            ("C_CM", c.corrective),
            ("C_x", c.crew_hourly),
            ("C_q", c.overtime_hourly),
            ("C_r", c.vessel_daily),
            ("C_lambda", c.rul_daily),
            ("U", c.interruption_upfront.unwrap_or(0.0)),
            ("Y", c.interruption_hourly.unwrap_or(0.0)),
            ("N_q", self.regular_hours),
            ("N_H", self.overtime_cap),
            ("N_theta", self.theta_threshold),
        ];
        for (name, v) in named {
            if !(v.is_finite() && v >= 0.0) {
                return Err(MilpError::Config(format!("{name} must be finite and >= 0, got {v}")));
            }
        }
        if c.corrective < c.preventive {
            return Err(MilpError::Config("C_CM must be >= C_PM".into()));
        }
        if self.crews == 0 {
            return Err(MilpError::Config("N_x must be at least 1".into()));
        }
        if !(self.last_light >= 1 && self.last_light <= 24) {
            return Err(MilpError::Config("last_light must lie in 1..=24".into()));
        }
        if !(self.mip_gap >= 0.0 && self.mip_gap < 1.0) {
            return Err(MilpError::Config(format!("mip_gap must lie in [0, 1), got {}", self.mip_gap)));
        }
        if !(self.time_limit_secs > 0.0) {
            return Err(MilpError::Config("time_limit_secs must be positive".into()));
        }
        if let BigMPolicy::Global(m) = self.big_m {
            if !(m.is_finite() && m > 0.0) {
                return Err(MilpError::Config("global big-M must be positive".into()));
            }
        }
        Ok(())
    }
}

/// State carried into a solve for one turbine.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TurbineBoundary {
    /// A task started on an earlier day is still open; its repair cost is already paid.
    pub carried_task: bool,
    /// Hours left on the open task.
    pub carried_hours: u32,
    /// Maintenance criticality weight on the repair cost.
    pub criticality: f64,
    /// Days elapsed since the last renewal.
    pub elapsed_days: f64,
    /// Days since the last completed maintenance, as counted by time-based schedules.
    pub days_since_maintenance: f64,
    /// The turbine is observed to be down after a failure.
    pub failed: bool,
}

impl TurbineBoundary {
    pub fn healthy(elapsed_days: f64) -> Self {
        Self {
            carried_task: false,
            carried_hours: 0,
            criticality: 1.0,
            elapsed_days,
            days_since_maintenance: elapsed_days,
            failed: false,
        }
    }

    pub fn validate(&self, index: usize) -> Result<(), MilpError> {
        if self.carried_hours > 0 && !self.carried_task {
            return Err(MilpError::Boundary(index, "carried hours without an open task".into()));
        }
        if !(self.criticality.is_finite() && self.criticality >= 0.0) {
            return Err(MilpError::Boundary(index, "criticality must be >= 0".into()));
        }
        if !(self.elapsed_days.is_finite() && self.elapsed_days > 0.0) {
            return Err(MilpError::Boundary(
                index,
                format!("elapsed life must be positive, got {}", self.elapsed_days),
            ));
        }
        Ok(())
    }

    pub fn rho(&self) -> f64 {
        if self.carried_task {
            1.0
        } else {
            0.0
        }
    }
}
