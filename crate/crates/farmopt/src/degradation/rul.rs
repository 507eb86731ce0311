use rand::Rng;
use rand_distr::{Distribution, InverseGaussian};
use serde::{Deserialize, Serialize};

use super::{DegradationError, DegradationState};
use crate::rng::keyed_rng;

pub const HOURS_PER_DAY: f64 = 24.0;

/// Inverse-Gaussian remaining-useful-life distribution, in days.
///
/// A zero mean denotes the degenerate point mass at zero (turbine already failed).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RulDistribution {
    pub mean: f64,
    pub shape: f64,
}

impl RulDistribution {
    pub fn point_mass_at_zero() -> Self {
        Self {
            mean: 0.0,
            shape: f64::INFINITY,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.mean <= 0.0
    }

    pub fn variance(&self) -> f64 {
        if self.is_degenerate() {
            0.0
        } else {
            self.mean.powi(3) / self.shape
        }
    }
}

/// First-passage parameters of a drifted Brownian motion to a level `gap` above
/// its current value: mean `gap / drift`, shape `(gap / sigma)^2`, in the time
/// unit of `drift` and `sigma`.
pub fn first_passage_params(gap: f64, drift: f64, sigma: f64) -> (f64, f64) {
    (gap / drift, (gap / sigma).powi(2))
}

/// Nominal RUL of a turbine given its current belief, converted to days.
pub fn nominal_rul(state: &DegradationState) -> Result<RulDistribution, DegradationError> {
    let gap = state.failure_threshold - state.observed_amplitude;
    if gap <= 0.0 {
        return Err(DegradationError::AlreadyFailed {
            amplitude: state.observed_amplitude,
            threshold: state.failure_threshold,
        });
    }
    let drift = state.posterior.mean_beta;
    if drift <= 0.0 {
        return Err(DegradationError::NonPositiveDrift(drift));
    }
    let (mean_h, shape_h) = first_passage_params(gap, drift, state.posterior.sigma);
    // Scaling an inverse-Gaussian variable scales both parameters.
    Ok(RulDistribution {
        mean: mean_h / HOURS_PER_DAY,
        shape: shape_h / HOURS_PER_DAY,
    })
}

/// Draw `count` RUL samples (days) from a generator seeded with `seed`.
pub fn sample_rul(dist: &RulDistribution, count: usize, seed: u64) -> Vec<f64> {
    let mut rng = keyed_rng(seed, &[]);
    sample_rul_with(dist, count, &mut rng)
}

pub fn sample_rul_with<R: Rng + ?Sized>(dist: &RulDistribution, count: usize, rng: &mut R) -> Vec<f64> {
    if dist.is_degenerate() {
        return vec![0.0; count];
    }
    let ig = InverseGaussian::new(dist.mean, dist.shape)
        .expect("non-degenerate distribution has positive parameters");
    (0..count).map(|_| ig.sample(rng).max(0.0)).collect()
}

/// One stretch of operation with a constant relative-RUL factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoadedPeriod {
    pub factor: f64,
    pub days: f64,
}

impl LoadedPeriod {
    pub fn hour(factor: f64) -> Self {
        Self {
            factor,
            days: 1.0 / HOURS_PER_DAY,
        }
    }

    pub fn day(factor: f64) -> Self {
        Self { factor, days: 1.0 }
    }
}

/// RUL after a sequence of loaded periods: `lambda0 + sum (1 - F) * days`, floored at 0.
///
/// A factor of zero stands for a stopped turbine, which accrues no damage.
pub fn rul_after_loading(lambda0: f64, periods: &[LoadedPeriod]) -> Result<f64, DegradationError> {
    if !(lambda0.is_finite() && lambda0 >= 0.0) {
        return Err(DegradationError::InvalidRul(lambda0));
    }
    let mut lambda = lambda0;
    for p in periods {
        if !(p.factor.is_finite() && p.factor >= 0.0 && p.days.is_finite() && p.days >= 0.0) {
            return Err(DegradationError::InvalidFactor(p.factor));
        }
        lambda += (1.0 - p.factor) * p.days;
    }
    Ok(lambda.max(0.0))
}
