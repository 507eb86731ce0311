//! Run configuration: one TOML document covering the optimizer, weather,
//! access, power, load, degradation, farm and campaign settings.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::degradation::{BaselinePrior, LoadFactorTable, SyntheticLoad};
use crate::milp::{backend_by_name, MilpConfig};
use crate::policies::{Policy, PolicyKind};
use crate::power::{PowerCurve, PowerModel, TabulatedCurve, YawGrid};
use crate::scenario::{AccessRule, WeatherModel};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {message}")]
    Read { path: PathBuf, message: String },
    #[error("cannot parse config: {0}")]
    Parse(String),
    #[error("invalid config: {0}")]
    Invalid(String),
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError::Invalid(msg.into()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct YawSettings {
    /// Number of levels, odd, centred on 0 degrees.
    pub levels: usize,
    pub step_deg: f64,
}

impl Default for YawSettings {
    fn default() -> Self {
        Self { levels: 7, step_deg: 5.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LoadSettings {
    /// Closed-form load ratio used when `table_csv` is absent.
    pub synthetic: SyntheticLoad,
    /// S-N fatigue exponent `C2`.
    pub fatigue_exponent: f64,
    /// Measured load-ratio grid (header: wind bins; first column: yaw levels).
    pub table_csv: Option<PathBuf>,
}

impl Default for LoadSettings {
    fn default() -> Self {
        Self {
            synthetic: SyntheticLoad::default(),
            fatigue_exponent: 10.0,
            table_csv: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DegradationSettings {
    /// Population prior; each true blade draws its own `(alpha, beta)` from it.
    pub prior: BaselinePrior,
    pub failure_threshold: f64,
    /// Range of initial ages (days since renewal) of the fleet.
    pub initial_age_days: [f64; 2],
}

impl Default for DegradationSettings {
    fn default() -> Self {
        Self {
            prior: BaselinePrior {
                mean_alpha: 10.0,
                var_alpha: 4.0,
                mean_beta: 0.09,
                var_beta: 2.25e-4,
                cov_alpha_beta: 0.0,
                sigma: 0.3,
            },
            failure_threshold: 100.0,
            initial_age_days: [0.0, 30.0],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CampaignSettings {
    pub turbines: usize,
    /// Days simulated (one optimization per day).
    pub rolls: usize,
    /// Long-term horizon length `N_D` in days.
    pub horizon_days: usize,
    pub scenarios: usize,
    /// Truth realizations; every policy is run against each of them.
    pub truth_seeds: Vec<u64>,
    /// Maintenance criticality weight applied to every turbine.
    pub criticality: f64,
}

impl Default for CampaignSettings {
    fn default() -> Self {
        Self {
            turbines: 5,
            rolls: 60,
            horizon_days: 10,
            scenarios: 50,
            truth_seeds: vec![1],
            criticality: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub optimizer: MilpConfig,
    /// MILP backend name.
    pub backend: String,
    pub access: AccessRule,
    pub weather: WeatherModel,
    pub power_curve: PowerCurve,
    /// Zero-yaw curve as `wind_speed_ms, scaled_power` rows; replaces the parametric ramp.
    pub power_curve_csv: Option<PathBuf>,
    pub yaw: YawSettings,
    pub load: LoadSettings,
    pub degradation: DegradationSettings,
    pub campaign: CampaignSettings,
    pub policies: Vec<PolicyKind>,
    pub tbs_interval_days: f64,
    pub output_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            optimizer: MilpConfig::default(),
            backend: "highs".into(),
            access: AccessRule::default(),
            weather: WeatherModel::default(),
            power_curve: PowerCurve::default(),
            power_curve_csv: None,
            yaw: YawSettings::default(),
            load: LoadSettings::default(),
            degradation: DegradationSettings::default(),
            campaign: CampaignSettings::default(),
            policies: PolicyKind::ALL.to_vec(),
            tbs_interval_days: 60.0,
            output_dir: PathBuf::from("results"),
        }
    }
}

/// Model objects built from a validated config.
#[derive(Debug, Clone)]
pub struct FarmModel {
    pub power: PowerModel,
    pub grid: YawGrid,
    pub table: LoadFactorTable,
    /// Load-table row of each yaw level.
    pub table_rows: Vec<usize>,
}

impl RunConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, ConfigError> {
        let cfg: Self = toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Read {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        Self::from_toml_str(&text)
    }

    /// The fully resolved config, every parameter spelled out.
    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("run config serializes")
    }

    /// Apply `dotted.key = value` overrides, e.g. `("optimizer.costs.C_PM", "5000")`.
    /// Values are read as TOML literals, falling back to plain strings.
    pub fn with_overrides(&self, overrides: &[(String, String)]) -> Result<Self, ConfigError> {
        let mut doc = toml::Table::try_from(self).map_err(|e| ConfigError::Parse(e.to_string()))?;
        for (key, raw) in overrides {
            let value = format!("v = {raw}")
                .parse::<toml::Table>()
                .ok()
                .and_then(|mut t| t.remove("v"))
                .unwrap_or_else(|| toml::Value::String(raw.clone()));
            let mut parts: Vec<&str> = key.split('.').collect();
            let last = parts.pop().filter(|s| !s.is_empty()).ok_or_else(|| ConfigError::Parse(format!("empty key `{key}`")))?;
            let mut table = &mut doc;
            for p in parts {
                table = table
                    .entry(p)
                    .or_insert_with(|| toml::Value::Table(toml::Table::new()))
                    .as_table_mut()
                    .ok_or_else(|| ConfigError::Parse(format!("`{p}` in `{key}` is not a section")))?;
            }
            table.insert(last.to_string(), value);
        }
        let cfg: Self = toml::Value::Table(doc).try_into().map_err(|e: toml::de::Error| ConfigError::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn policy(&self, kind: PolicyKind) -> Policy {
        Policy { kind, tbs_interval_days: self.tbs_interval_days }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.optimizer.validate().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        backend_by_name(&self.backend).map_err(|e| ConfigError::Invalid(e.to_string()))?;
        self.access.validate().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        self.weather.validate().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        if self.optimizer.last_light != self.access.last_light {
            return invalid(format!(
                "optimizer.last_light ({}) must equal access.last_light ({})",
                self.optimizer.last_light, self.access.last_light
            ));
        }
        self.degradation.prior.validate().map_err(|e| ConfigError::Invalid(format!("degradation.prior: {e}")))?;
        let d = &self.degradation;
        if !(d.failure_threshold.is_finite() && d.failure_threshold > d.prior.mean_alpha) {
            return invalid("degradation.failure_threshold must exceed prior.mean_alpha");
        }
        if d.prior.mean_beta <= 0.0 {
            return invalid("degradation.prior.mean_beta must be positive");
        }
        let [lo, hi] = d.initial_age_days;
        if !(lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo <= hi) {
            return invalid("degradation.initial_age_days must satisfy 0 <= min <= max");
        }
        let c = &self.campaign;
        if c.turbines == 0 {
            return invalid("campaign.turbines must be at least 1");
        }
        if c.rolls == 0 {
            return invalid("campaign.rolls must be at least 1");
        }
        if c.horizon_days == 0 {
            return invalid("campaign.horizon_days must be at least 1");
        }
        if c.scenarios == 0 {
            return invalid("campaign.scenarios must be at least 1");
        }
        if c.truth_seeds.is_empty() {
            return invalid("campaign.truth_seeds must not be empty");
        }
        if !(c.criticality.is_finite() && c.criticality >= 0.0) {
            return invalid("campaign.criticality must be >= 0");
        }
        if self.policies.is_empty() {
            return invalid("policies must not be empty");
        }
        for (k, p) in self.policies.iter().enumerate() {
            if self.policies[..k].contains(p) {
                return invalid(format!("policy `{p}` listed twice"));
            }
        }
        if !(self.tbs_interval_days.is_finite() && self.tbs_interval_days > 0.0) {
            return invalid("tbs_interval_days must be positive");
        }
        if !(self.load.fatigue_exponent.is_finite() && self.load.fatigue_exponent > 0.0) {
            return invalid("load.fatigue_exponent must be positive");
        }
        self.power_curve.validate().map_err(|e| ConfigError::Invalid(format!("power_curve: {e}")))?;
        Ok(())
    }

    /// Build the power model, yaw grid and load table.
    pub fn farm_model(&self) -> Result<FarmModel, ConfigError> {
        let grid = YawGrid::symmetric(self.yaw.levels, self.yaw.step_deg)
            .map_err(|e| ConfigError::Invalid(format!("yaw: {e}")))?;
        let power = match &self.power_curve_csv {
            Some(path) => PowerModel::Tabulated(
                TabulatedCurve::from_csv_path(path, self.power_curve.rated_capacity, self.power_curve.yaw_exponent)
                    .map_err(|e| ConfigError::Invalid(format!("power_curve_csv: {e}")))?,
            ),
            None => PowerModel::Parametric(self.power_curve),
        };
        let table = match &self.load.table_csv {
            Some(path) => LoadFactorTable::from_csv_path(path, self.load.fatigue_exponent),
            None => LoadFactorTable::synthetic(
                &self.load.synthetic,
                &grid.levels,
                &LoadFactorTable::default_wind_bins(),
                self.load.fatigue_exponent,
            ),
        }
        .map_err(|e| ConfigError::Invalid(format!("load: {e}")))?;
        let table_rows = grid
            .levels
            .iter()
            .map(|&g| table.yaw_index(g).ok_or_else(|| ConfigError::Invalid(format!("load table has no {g} deg row"))))
            .collect::<Result<_, _>>()?;
        Ok(FarmModel { power, grid, table, table_rows })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate_and_round_trip() {
        let cfg = RunConfig::default();
        cfg.validate().unwrap();
        let back = RunConfig::from_toml_str(&cfg.to_toml_string()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(matches!(RunConfig::from_toml_str("colour = 3"), Err(ConfigError::Parse(_))));
        assert!(matches!(RunConfig::from_toml_str("[campaign]\nturbine = 3"), Err(ConfigError::Parse(_))));
    }

    #[test]
    fn overrides_reach_nested_keys() {
        let o = |k: &str, v: &str| (k.to_string(), v.to_string());
        let cfg = RunConfig::default()
            .with_overrides(&[o("optimizer.costs.C_PM", "5000"), o("campaign.truth_seeds", "[3, 4]"), o("output_dir", "out")])
            .unwrap();
        assert_eq!(cfg.optimizer.costs.preventive, 5000.0);
        assert_eq!(cfg.campaign.truth_seeds, vec![3, 4]);
        assert_eq!(cfg.output_dir, PathBuf::from("out"));
        assert!(RunConfig::default().with_overrides(&[o("campaign.turbine", "2")]).is_err());
        assert!(RunConfig::default().with_overrides(&[o("campaign.turbines", "0")]).is_err());
    }

    #[test]
    fn negative_cost_names_the_key() {
        let err = RunConfig::from_toml_str("[optimizer.costs]\nC_PM = -1.0").unwrap_err();
        assert!(err.to_string().contains("C_PM"), "{err}");
    }
}
