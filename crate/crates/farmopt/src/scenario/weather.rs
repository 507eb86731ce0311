use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::ScenarioError;
use crate::rng::{keyed_rng, tag};

/// Mean-reverting AR(1) around an hour-of-day mean profile:
/// `x_h = mean[h mod 24] + e_h`, `e_h = a * e_{h-1} + std_dev * sqrt(1 - a^2) * z_h`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesModel {
    /// Either one value (flat profile) or 24 hour-of-day means.
    pub mean_profile: Vec<f64>,
    /// Stationary standard deviation of the deviation process.
    pub std_dev: f64,
    /// Lag-1 autocorrelation of the deviation process.
    pub ar_coef: f64,
}

impl SeriesModel {
    pub fn flat(mean: f64, std_dev: f64, ar_coef: f64) -> Self {
        Self {
            mean_profile: vec![mean],
            std_dev,
            ar_coef,
        }
    }

    pub fn mean_at(&self, hour_of_day: usize) -> f64 {
        if self.mean_profile.len() == 1 {
            self.mean_profile[0]
        } else {
            self.mean_profile[hour_of_day % 24]
        }
    }

    fn validate(&self, name: &str) -> Result<(), ScenarioError> {
        let bad = |m: &str| Err(ScenarioError::InvalidModel(format!("{name}: {m}")));
        if !(self.mean_profile.len() == 1 || self.mean_profile.len() == 24) {
            return bad("mean_profile needs 1 or 24 values");
        }
        if self.mean_profile.iter().any(|v| !v.is_finite()) {
            return bad("mean_profile must be finite");
        }
        if !(self.std_dev.is_finite() && self.std_dev >= 0.0) {
            return bad("std_dev must be nonnegative");
        }
        if !(self.ar_coef > -1.0 && self.ar_coef < 1.0) {
            return bad("ar_coef must lie in (-1, 1)");
        }
        Ok(())
    }

    fn innovation_scale(&self) -> f64 {
        self.std_dev * (1.0 - self.ar_coef * self.ar_coef).sqrt()
    }
}

/// Joint generator for wind speed (m/s), significant wave height (m) and price ($/MWh).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WeatherModel {
    pub wind: SeriesModel,
    pub wave: SeriesModel,
    pub price: SeriesModel,
    /// Correlation between wind and wave innovations.
    pub wind_wave_correlation: f64,
    /// Keep negative prices instead of truncating them at zero.
    pub allow_negative_prices: bool,
}

impl Default for WeatherModel {
    fn default() -> Self {
        let wind_profile = (0..24)
            .map(|h| 9.0 + 0.8 * ((h as f64 - 15.0) * std::f64::consts::PI / 12.0).cos())
            .collect();
        let price_profile = (0..24)
            .map(|h| 35.0 + 10.0 * ((h as f64 - 18.0) * std::f64::consts::PI / 12.0).cos())
            .collect();
        Self {
            wind: SeriesModel {
                mean_profile: wind_profile,
                std_dev: 2.5,
                ar_coef: 0.95,
            },
            wave: SeriesModel::flat(1.2, 0.45, 0.97),
            price: SeriesModel {
                mean_profile: price_profile,
                std_dev: 8.0,
                ar_coef: 0.9,
            },
            wind_wave_correlation: 0.6,
            allow_negative_prices: false,
        }
    }
}

/// Latent deviations from the mean profile, carried between hours.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct WeatherState {
    pub wind: f64,
    pub wave: f64,
    pub price: f64,
}

/// Hourly trajectories, one row per scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct WeatherPaths {
    pub wind: Vec<Vec<f64>>,
    pub wave: Vec<Vec<f64>>,
    pub price: Vec<Vec<f64>>,
}

impl WeatherPaths {
    pub fn n_scenarios(&self) -> usize {
        self.wind.len()
    }
}

impl WeatherModel {
    pub fn validate(&self) -> Result<(), ScenarioError> {
        self.wind.validate("wind")?;
        self.wave.validate("wave")?;
        self.price.validate("price")?;
        if !(self.wind_wave_correlation >= -1.0 && self.wind_wave_correlation <= 1.0) {
            return Err(ScenarioError::InvalidModel(
                "wind_wave_correlation must lie in [-1, 1]".into(),
            ));
        }
        Ok(())
    }

    /// Draw a stationary starting state.
    pub fn stationary_state<R: Rng + ?Sized>(&self, rng: &mut R) -> WeatherState {
        let (zw, zh, zp) = self.correlated_normals(rng);
        WeatherState {
            wind: self.wind.std_dev * zw,
            wave: self.wave.std_dev * zh,
            price: self.price.std_dev * zp,
        }
    }

    fn correlated_normals<R: Rng + ?Sized>(&self, rng: &mut R) -> (f64, f64, f64) {
        let z1: f64 = StandardNormal.sample(rng);
        let z2: f64 = StandardNormal.sample(rng);
        let z3: f64 = StandardNormal.sample(rng);
        let rho = self.wind_wave_correlation;
        (z1, rho * z1 + (1.0 - rho * rho).sqrt() * z2, z3)
    }

    /// Advance the latent state by one hour.
    pub fn step<R: Rng + ?Sized>(&self, state: WeatherState, rng: &mut R) -> WeatherState {
        let (zw, zh, zp) = self.correlated_normals(rng);
        WeatherState {
            wind: self.wind.ar_coef * state.wind + self.wind.innovation_scale() * zw,
            wave: self.wave.ar_coef * state.wave + self.wave.innovation_scale() * zh,
            price: self.price.ar_coef * state.price + self.price.innovation_scale() * zp,
        }
    }

    /// Observable values for a latent state at a given hour of day.
    pub fn observe(&self, state: &WeatherState, hour_of_day: usize) -> (f64, f64, f64) {
        let wind = (self.wind.mean_at(hour_of_day) + state.wind).max(0.0);
        let wave = (self.wave.mean_at(hour_of_day) + state.wave).max(0.0);
        let mut price = self.price.mean_at(hour_of_day) + state.price;
        if !self.allow_negative_prices {
            price = price.max(0.0);
        }
        (wind, wave, price)
    }

    /// Simulate `len` hours starting at hour-of-day `start_hour`, stepping from `state`.
    /// Returns the three series and the final latent state.
    pub fn simulate<R: Rng + ?Sized>(
        &self,
        start_hour: usize,
        len: usize,
        mut state: WeatherState,
        rng: &mut R,
    ) -> ([Vec<f64>; 3], WeatherState) {
        let mut out = [
            Vec::with_capacity(len),
            Vec::with_capacity(len),
            Vec::with_capacity(len),
        ];
        for h in 0..len {
            state = self.step(state, rng);
            let (w, v, p) = self.observe(&state, start_hour + h);
            out[0].push(w);
            out[1].push(v);
            out[2].push(p);
        }
        (out, state)
    }
}

/// Generate `n_scenarios` hourly trajectories of length `hours`, starting at
/// midnight. Each scenario has its own substream keyed by `(seed, index)`.
/// With `anchor` given every path continues from that latent state (the last
/// revealed hour); otherwise a stationary start is drawn per scenario.
pub fn generate(
    model: &WeatherModel,
    hours: usize,
    n_scenarios: usize,
    seed: u64,
    anchor: Option<WeatherState>,
) -> Result<WeatherPaths, ScenarioError> {
    model.validate()?;
    if n_scenarios == 0 {
        return Err(ScenarioError::InvalidModel("need at least one scenario".into()));
    }
    let mut paths = WeatherPaths {
        wind: Vec::with_capacity(n_scenarios),
        wave: Vec::with_capacity(n_scenarios),
        price: Vec::with_capacity(n_scenarios),
    };
    for s in 0..n_scenarios {
        let mut rng = keyed_rng(seed, &[tag::SCENARIO_WEATHER, s as u64]);
        let start = anchor.unwrap_or_else(|| model.stationary_state(&mut rng));
        let ([w, v, p], _) = model.simulate(0, hours, start, &mut rng);
        paths.wind.push(w);
        paths.wave.push(v);
        paths.price.push(p);
    }
    Ok(paths)
}

/// Daily means of an hourly series, for `n_days` days after the first `skip_days`.
pub fn daily_means(hourly: &[f64], skip_days: usize, n_days: usize) -> Vec<f64> {
    (0..n_days)
        .map(|d| {
            let a = 24 * (skip_days + d);
            hourly[a..a + 24].iter().sum::<f64>() / 24.0
        })
        .collect()
}
