//! The simulated ground truth that policies act on but never see directly.

use rand::RngExt;
use rand_distr::{Distribution, StandardNormal};

use crate::degradation::{BaselinePrior, HOURS_PER_DAY};
use crate::rng::{keyed_rng, tag};
use crate::scenario::{WeatherModel, WeatherState, STH_HOURS};

/// Realized hourly weather for the whole campaign, plus the latent state at
/// every midnight so forecasts can continue from the last revealed hour.
#[derive(Debug, Clone, PartialEq)]
pub struct TruthWeather {
    pub wind: Vec<f64>,
    pub wave: Vec<f64>,
    pub price: Vec<f64>,
    /// `midnight[d]` is the latent state just before day `d` starts.
    pub midnight: Vec<WeatherState>,
}

impl TruthWeather {
    /// Day `d` is drawn from its own stream, so the first `n` days do not
    /// depend on how many days are simulated.
    pub fn simulate(model: &WeatherModel, days: usize, seed: u64) -> Self {
        let mut state = model.stationary_state(&mut keyed_rng(seed, &[tag::TRUTH_WEATHER, 0]));
        let mut out = Self {
            wind: Vec::with_capacity(days * STH_HOURS),
            wave: Vec::with_capacity(days * STH_HOURS),
            price: Vec::with_capacity(days * STH_HOURS),
            midnight: Vec::with_capacity(days + 1),
        };
        for d in 0..days {
            out.midnight.push(state);
            let mut rng = keyed_rng(seed, &[tag::TRUTH_WEATHER, d as u64 + 1]);
            let ([w, v, p], next) = model.simulate(0, STH_HOURS, state, &mut rng);
            out.wind.extend(w);
            out.wave.extend(v);
            out.price.extend(p);
            state = next;
        }
        out.midnight.push(state);
        out
    }

    pub fn days(&self) -> usize {
        self.wind.len() / STH_HOURS
    }

    /// `(wind, wave, price)` at hour `h` of day `d`.
    pub fn at(&self, d: usize, h: usize) -> (f64, f64, f64) {
        let k = d * STH_HOURS + h;
        (self.wind[k], self.wave[k], self.price[k])
    }
}

/// True degradation of one blade over its current life cycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruthBlade {
    pub alpha: f64,
    pub beta: f64,
    pub sigma: f64,
    pub amplitude: f64,
    /// Accumulated load-weighted operating hours since renewal.
    pub age_hours: f64,
    pub failed: bool,
    /// Number of renewals so far; keys the parameter draw.
    pub cycle: u64,
}

/// Draw `(alpha, beta)` from the prior, rejecting draws with non-positive
/// drift or an initial amplitude at the threshold.
fn draw_parameters(prior: &BaselinePrior, threshold: f64, seed: u64, turbine: usize, cycle: u64) -> (f64, f64) {
    let mut rng = keyed_rng(seed, &[tag::TRUTH_LIFE, turbine as u64, cycle]);
    let sa = prior.var_alpha.sqrt();
    let slope = if sa > 0.0 { prior.cov_alpha_beta / sa } else { 0.0 };
    let resid = (prior.var_beta - slope * slope).max(0.0).sqrt();
    for _ in 0..1000 {
        let z1: f64 = StandardNormal.sample(&mut rng);
        let z2: f64 = StandardNormal.sample(&mut rng);
        let alpha = prior.mean_alpha + sa * z1;
        let beta = prior.mean_beta + slope * z1 + resid * z2;
        if beta > 0.0 && alpha < threshold {
            return (alpha, beta);
        }
    }
    (prior.mean_alpha, prior.mean_beta)
}

impl TruthBlade {
    pub fn draw(prior: &BaselinePrior, threshold: f64, seed: u64, turbine: usize, cycle: u64) -> Self {
        let (alpha, beta) = draw_parameters(prior, threshold, seed, turbine, cycle);
        Self { alpha, beta, sigma: prior.sigma, amplitude: alpha, age_hours: 0.0, failed: false, cycle }
    }

    /// A blade already `age_days` into its life at full load, drawn from the
    /// initial-fleet stream. Returns the blade and the age.
    pub fn initial(prior: &BaselinePrior, threshold: f64, age_range: [f64; 2], seed: u64, turbine: usize) -> (Self, f64) {
        let mut blade = Self::draw(prior, threshold, seed, turbine, 0);
        let mut rng = keyed_rng(seed, &[tag::INITIAL_FLEET, turbine as u64]);
        let [lo, hi] = age_range;
        let age_days = if hi > lo { rng.random_range(lo..hi) } else { lo };
        let z: f64 = StandardNormal.sample(&mut rng);
        let tau = age_days * HOURS_PER_DAY;
        blade.age_hours = tau;
        blade.amplitude = blade.alpha + blade.beta * tau + blade.sigma * tau.sqrt() * z;
        blade.failed = blade.amplitude >= threshold;
        (blade, age_days)
    }

    /// Advance one hour under load factor `factor` with standard-normal shock
    /// `z`. Returns true when the blade fails during this hour.
    pub fn advance(&mut self, factor: f64, z: f64, threshold: f64) -> bool {
        if self.failed || factor <= 0.0 {
            return false;
        }
        self.amplitude += self.beta * factor + self.sigma * factor.sqrt() * z;
        self.age_hours += factor;
        if self.amplitude >= threshold {
            self.failed = true;
            return true;
        }
        false
    }

    /// Expected remaining life at full load, in days.
    pub fn expected_remaining_days(&self, threshold: f64) -> f64 {
        ((threshold - self.amplitude) / (self.beta * HOURS_PER_DAY)).max(0.0)
    }
}

/// The day's 24 degradation shocks of one turbine. Always drawn in full so the
/// stream never depends on what a policy did.
pub fn daily_shocks(seed: u64, turbine: usize, day: usize) -> [f64; STH_HOURS] {
    let mut rng = keyed_rng(seed, &[tag::TRUTH_NOISE, turbine as u64, day as u64]);
    std::array::from_fn(|_| StandardNormal.sample(&mut rng))
}
