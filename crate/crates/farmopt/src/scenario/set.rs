use super::access::{accessible, mission_time, AccessRule};
use super::weather::{daily_means, WeatherPaths};
use super::ScenarioError;
use crate::degradation::{relative_rul_factor, sample_rul_with, LoadFactorTable, RulDistribution};
use crate::power::{power_table, PowerModel, PowerTable, WindView, YawGrid};
use crate::rng::{keyed_rng, tag};

pub const STH_HOURS: usize = 24;

/// What the scenario builder needs to know about one turbine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurbineOutlook {
    /// Nominal RUL belief; degenerate for a failed turbine.
    pub rul: RulDistribution,
    /// The turbine is known to be down after a failure.
    pub failed: bool,
    /// Hours left on a task started on an earlier day (0 if none).
    pub carried_hours: u32,
}

/// Static inputs shared by every scenario derivation.
#[derive(Debug, Clone, Copy)]
pub struct DeriveContext<'a> {
    pub power: &'a PowerModel,
    pub grid: &'a YawGrid,
    pub table: &'a LoadFactorTable,
    pub access: &'a AccessRule,
}

/// Counters for inputs that fell outside modelled ranges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DeriveDiagnostics {
    pub factor_clamped: usize,
    pub mission_capped: usize,
}

/// Scenario trajectories plus every parameter the optimizer reads.
///
/// Hours `t` run over `0..24` (the short-term day) and days `d` over
/// `0..n_days`, where index `d` is long-term day `d + 1`. Flat tensors are laid
/// out in the order of their accessor arguments.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSet {
    pub n_scenarios: usize,
    pub n_turbines: usize,
    pub n_days: usize,
    pub n_levels: usize,
    pub yaw_levels: Vec<f64>,
    pub rated_capacity: f64,
    /// Hourly trajectories `[s][h]`, covering at least `24 * (1 + n_days)` hours.
    pub wind: Vec<Vec<f64>>,
    pub wave: Vec<Vec<f64>>,
    pub price: Vec<Vec<f64>>,
    /// Daily means `[s][d]` of the long-term days.
    pub wind_daily: Vec<Vec<f64>>,
    pub wave_daily: Vec<Vec<f64>>,
    pub price_daily: Vec<Vec<f64>>,
    /// `rul0[i * n_s + s]`, days.
    pub rul0: Vec<f64>,
    pub factor_sth: Vec<f64>,
    pub factor_lth: Vec<f64>,
    pub power: PowerTable,
    pub mission_sth: Vec<u32>,
    pub mission_lth: Vec<u32>,
    pub diagnostics: DeriveDiagnostics,
}

impl ScenarioSet {
    pub fn price(&self, t: usize, s: usize) -> f64 {
        self.price[s][t]
    }

    pub fn price_daily(&self, d: usize, s: usize) -> f64 {
        self.price_daily[s][d]
    }

    pub fn rul0(&self, i: usize, s: usize) -> f64 {
        self.rul0[i * self.n_scenarios + s]
    }

    pub fn factor(&self, t: usize, i: usize, j: usize, s: usize) -> f64 {
        self.factor_sth[((t * self.n_turbines + i) * self.n_levels + j) * self.n_scenarios + s]
    }

    pub fn factor_lth(&self, d: usize, i: usize, j: usize, s: usize) -> f64 {
        self.factor_lth[((d * self.n_turbines + i) * self.n_levels + j) * self.n_scenarios + s]
    }

    pub fn power(&self, t: usize, i: usize, j: usize, s: usize) -> f64 {
        self.power.sth(t, i, j, s)
    }

    pub fn power_lth(&self, d: usize, i: usize, j: usize, s: usize) -> f64 {
        self.power.lth(d, i, j, s)
    }

    pub fn power_lth_max(&self, d: usize, i: usize, s: usize) -> f64 {
        self.power.lth_max(d, i, s)
    }

    /// Mission time (hours) of a task started at hour `t`.
    pub fn mission(&self, t: usize, i: usize, s: usize) -> u32 {
        self.mission_sth[(t * self.n_turbines + i) * self.n_scenarios + s]
    }

    /// Mission time (hours) of a task started at first light of day index `d`.
    pub fn mission_lth(&self, d: usize, i: usize, s: usize) -> u32 {
        self.mission_lth[(d * self.n_turbines + i) * self.n_scenarios + s]
    }

    /// Nominal operational status over the short-term day: at least one day of life left.
    pub fn zeta0(&self, i: usize, s: usize) -> bool {
        self.rul0(i, s) >= 1.0
    }

    /// Nominal operational status on day index `d` (day number `d + 1`).
    pub fn zeta0_lth(&self, d: usize, i: usize, s: usize) -> bool {
        self.rul0(i, s) >= (d + 1) as f64
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        let (n_s, n_i, n_d, n_j) = (self.n_scenarios, self.n_turbines, self.n_days, self.n_levels);
        let shape = |name: &str, got: usize, want: usize| {
            if got == want {
                Ok(())
            } else {
                Err(ScenarioError::Shape(format!("{name}: {got} entries, expected {want}")))
            }
        };
        if n_s == 0 || n_i == 0 || n_d == 0 || n_j == 0 {
            return Err(ScenarioError::Shape("all dimensions must be positive".into()));
        }
        shape("yaw_levels", self.yaw_levels.len(), n_j)?;
        for (name, v) in [("wind", &self.wind), ("wave", &self.wave), ("price", &self.price)] {
            shape(name, v.len(), n_s)?;
            if v.iter().any(|row| row.len() < STH_HOURS * (1 + n_d)) {
                return Err(ScenarioError::Shape(format!("{name}: trajectory too short")));
            }
        }
        for (name, v) in [
            ("wind_daily", &self.wind_daily),
            ("wave_daily", &self.wave_daily),
            ("price_daily", &self.price_daily),
        ] {
            shape(name, v.len(), n_s)?;
            for row in v {
                shape(name, row.len(), n_d)?;
            }
        }
        shape("rul0", self.rul0.len(), n_i * n_s)?;
        shape("factor_sth", self.factor_sth.len(), STH_HOURS * n_i * n_j * n_s)?;
        shape("factor_lth", self.factor_lth.len(), n_d * n_i * n_j * n_s)?;
        shape("power.sth", self.power.sth.len(), STH_HOURS * n_i * n_j * n_s)?;
        shape("power.lth", self.power.lth.len(), n_d * n_i * n_j * n_s)?;
        shape("power.lth_max", self.power.lth_max.len(), n_d * n_i * n_s)?;
        shape("mission_sth", self.mission_sth.len(), STH_HOURS * n_i * n_s)?;
        shape("mission_lth", self.mission_lth.len(), n_d * n_i * n_s)?;
        if self.rul0.iter().any(|&l| !(l.is_finite() && l >= 0.0)) {
            return Err(ScenarioError::Shape("rul0 must be finite and nonnegative".into()));
        }
        Ok(())
    }
}

/// Fill every derived tensor, drawing each turbine's nominal RUL per scenario
/// from its own keyed stream.
pub fn derive_parameters(
    paths: &WeatherPaths,
    n_days: usize,
    ctx: &DeriveContext<'_>,
    turbines: &[TurbineOutlook],
    seed: u64,
) -> Result<ScenarioSet, ScenarioError> {
    let n_s = paths.n_scenarios();
    let rul0 = turbines
        .iter()
        .enumerate()
        .map(|(i, o)| {
            if o.failed {
                vec![0.0; n_s]
            } else {
                let mut rng = keyed_rng(seed, &[tag::SCENARIO_RUL, i as u64]);
                sample_rul_with(&o.rul, n_s, &mut rng)
            }
        })
        .collect::<Vec<_>>();
    derive_with_rul(paths, n_days, ctx, turbines, &rul0)
}

/// As [`derive_parameters`] with the nominal RULs given explicitly as `rul0[i][s]`.
pub fn derive_with_rul(
    paths: &WeatherPaths,
    n_days: usize,
    ctx: &DeriveContext<'_>,
    turbines: &[TurbineOutlook],
    rul0: &[Vec<f64>],
) -> Result<ScenarioSet, ScenarioError> {
    ctx.access.validate()?;
    ctx.grid.validate()?;
    let n_s = paths.n_scenarios();
    let n_i = turbines.len();
    let n_j = ctx.grid.len();
    if n_s == 0 || n_i == 0 || n_days == 0 {
        return Err(ScenarioError::Shape("need scenarios, turbines and at least one long-term day".into()));
    }
    if rul0.len() != n_i || rul0.iter().any(|r| r.len() != n_s) {
        return Err(ScenarioError::Shape("rul0 must be turbines x scenarios".into()));
    }
    let need = STH_HOURS * (1 + n_days);
    for (name, v) in [("wind", &paths.wind), ("wave", &paths.wave), ("price", &paths.price)] {
        if v.len() != n_s || v.iter().any(|row| row.len() < need) {
            return Err(ScenarioError::Shape(format!("{name} trajectories must cover {need} hours")));
        }
    }
    let rows: Vec<usize> = ctx
        .grid
        .levels
        .iter()
        .map(|&g| {
            ctx.table
                .yaw_index(g)
                .ok_or_else(|| ScenarioError::Shape(format!("yaw level {g} missing from the load table")))
        })
        .collect::<Result<_, _>>()?;

    let mut diagnostics = DeriveDiagnostics::default();

    // Relative-RUL factors: hourly, and the daily mean of hourly values.
    let mut factor_sth = vec![0.0; STH_HOURS * n_i * n_j * n_s];
    let mut factor_lth = vec![0.0; n_days * n_i * n_j * n_s];
    for s in 0..n_s {
        let w = &paths.wind[s];
        for (j, &row) in rows.iter().enumerate() {
            let mut hourly = Vec::with_capacity(need);
            for &v in &w[..need] {
                let lookup = relative_rul_factor(ctx.table, row, v)?;
                diagnostics.factor_clamped += usize::from(lookup.clamped);
                hourly.push(lookup.factor);
            }
            for i in 0..n_i {
                for t in 0..STH_HOURS {
                    factor_sth[((t * n_i + i) * n_j + j) * n_s + s] = hourly[t];
                }
                for d in 0..n_days {
                    let a = STH_HOURS * (d + 1);
                    factor_lth[((d * n_i + i) * n_j + j) * n_s + s] =
                        hourly[a..a + STH_HOURS].iter().sum::<f64>() / STH_HOURS as f64;
                }
            }
        }
    }

    let power = power_table(
        ctx.power,
        ctx.grid,
        &WindView {
            hourly: &paths.wind,
            n_days,
            n_turbines: n_i,
        },
    )?;

    let access: Vec<Vec<bool>> = (0..n_s)
        .map(|s| {
            (0..paths.wind[s].len())
                .map(|h| accessible(ctx.access, paths.wind[s][h], paths.wave[s][h], h % 24))
                .collect()
        })
        .collect();

    let mut mission_sth = vec![0; STH_HOURS * n_i * n_s];
    let mut mission_lth = vec![0; n_days * n_i * n_s];
    for (i, o) in turbines.iter().enumerate() {
        for s in 0..n_s {
            let l0 = rul0[i][s];
            let repair = |failed_by_start: bool| {
                if o.carried_hours > 0 {
                    o.carried_hours
                } else if o.failed || failed_by_start {
                    ctx.access.corrective_hours
                } else {
                    ctx.access.preventive_hours
                }
            };
            for t in 0..STH_HOURS {
                let m = mission_time(ctx.access, &access[s], t, repair(l0 * 24.0 <= t as f64));
                diagnostics.mission_capped += usize::from(m.capped);
                mission_sth[(t * n_i + i) * n_s + s] = m.hours;
            }
            for d in 0..n_days {
                let start = STH_HOURS * (d + 1) + ctx.access.first_light;
                let m = mission_time(ctx.access, &access[s], start, repair(l0 < (d + 1) as f64));
                diagnostics.mission_capped += usize::from(m.capped);
                mission_lth[(d * n_i + i) * n_s + s] = m.hours;
            }
        }
    }

    let set = ScenarioSet {
        n_scenarios: n_s,
        n_turbines: n_i,
        n_days,
        n_levels: n_j,
        yaw_levels: ctx.grid.levels.clone(),
        rated_capacity: ctx.power.rated_capacity(),
        wind: paths.wind.clone(),
        wave: paths.wave.clone(),
        price: paths.price.clone(),
        wind_daily: paths.wind.iter().map(|w| daily_means(w, 1, n_days)).collect(),
        wave_daily: paths.wave.iter().map(|w| daily_means(w, 1, n_days)).collect(),
        price_daily: paths.price.iter().map(|w| daily_means(w, 1, n_days)).collect(),
        rul0: rul0.iter().flatten().copied().collect(),
        factor_sth,
        factor_lth,
        power,
        mission_sth,
        mission_lth,
        diagnostics,
    };
    set.validate()?;
    Ok(set)
}
