use serde::{Deserialize, Serialize};

use super::DegradationError;

/// Bivariate normal belief over the initial amplitude `alpha` and the
/// baseline drift `beta` of a Brownian degradation signal
/// `d(t) = alpha + beta * t + sigma * W(t)`, plus the known diffusion `sigma`.
///
/// Time is measured in hours of (transformed) operation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaselinePrior {
    pub mean_alpha: f64,
    pub var_alpha: f64,
    pub mean_beta: f64,
    pub var_beta: f64,
    pub cov_alpha_beta: f64,
    pub sigma: f64,
}

impl BaselinePrior {
    pub fn validate(&self) -> Result<(), DegradationError> {
        let finite = [
            self.mean_alpha,
            self.var_alpha,
            self.mean_beta,
            self.var_beta,
            self.cov_alpha_beta,
            self.sigma,
        ]
        .iter()
        .all(|v| v.is_finite());
        if !finite {
            return Err(DegradationError::InvalidPrior("non-finite parameter".into()));
        }
        if self.var_alpha <= 0.0 || self.var_beta <= 0.0 {
            return Err(DegradationError::InvalidPrior(
                "variances must be positive".into(),
            ));
        }
        if self.sigma <= 0.0 {
            return Err(DegradationError::InvalidPrior("sigma must be positive".into()));
        }
        if self.var_alpha * self.var_beta - self.cov_alpha_beta.powi(2) <= 0.0 {
            return Err(DegradationError::InvalidPrior(
                "covariance matrix is not positive definite".into(),
            ));
        }
        Ok(())
    }

    fn cov(&self) -> [[f64; 2]; 2] {
        [
            [self.var_alpha, self.cov_alpha_beta],
            [self.cov_alpha_beta, self.var_beta],
        ]
    }

    fn with_moments(&self, mean: [f64; 2], cov: [[f64; 2]; 2]) -> Self {
        Self {
            mean_alpha: mean[0],
            var_alpha: cov[0][0],
            mean_beta: mean[1],
            var_beta: cov[1][1],
            cov_alpha_beta: 0.5 * (cov[0][1] + cov[1][0]),
            sigma: self.sigma,
        }
    }

    /// Condition on one linear observation `y = x . (alpha, beta) + e`, `e ~ N(0, noise_var)`.
    fn condition(&self, x: [f64; 2], y: f64, noise_var: f64) -> Self {
        let s = self.cov();
        let sx = [s[0][0] * x[0] + s[0][1] * x[1], s[1][0] * x[0] + s[1][1] * x[1]];
        let denom = x[0] * sx[0] + x[1] * sx[1] + noise_var;
        let innovation = y - (x[0] * self.mean_alpha + x[1] * self.mean_beta);
        let k = [sx[0] / denom, sx[1] / denom];
        let mean = [
            self.mean_alpha + k[0] * innovation,
            self.mean_beta + k[1] * innovation,
        ];
        let cov = [
            [s[0][0] - k[0] * sx[0], s[0][1] - k[0] * sx[1]],
            [s[1][0] - k[1] * sx[0], s[1][1] - k[1] * sx[1]],
        ];
        self.with_moments(mean, cov)
    }
}

/// Current belief about one turbine's degradation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegradationState {
    pub prior: BaselinePrior,
    pub posterior: BaselinePrior,
    /// Last observed amplitude; the prior mean amplitude before any observation.
    pub observed_amplitude: f64,
    /// Time of the last observation, hours since renewal (0 before any observation).
    pub observation_time: f64,
    pub failure_threshold: f64,
    pub history: Vec<(f64, f64)>,
}

impl DegradationState {
    pub fn new(prior: BaselinePrior, failure_threshold: f64) -> Result<Self, DegradationError> {
        prior.validate()?;
        if !(failure_threshold.is_finite() && failure_threshold > 0.0) {
            return Err(DegradationError::InvalidThreshold(failure_threshold));
        }
        Ok(Self {
            prior,
            posterior: prior,
            observed_amplitude: prior.mean_alpha,
            observation_time: 0.0,
            failure_threshold,
            history: Vec::new(),
        })
    }

    /// Fresh belief after an as-good-as-new renewal.
    pub fn renewed(&self) -> Self {
        Self {
            prior: self.prior,
            posterior: self.prior,
            observed_amplitude: self.prior.mean_alpha,
            observation_time: 0.0,
            failure_threshold: self.failure_threshold,
            history: Vec::new(),
        }
    }

    pub fn has_crossed_threshold(&self) -> bool {
        self.observed_amplitude >= self.failure_threshold
    }
}

/// Sequential conjugate update with one new `(time, amplitude)` observation.
///
/// The first observation carries `alpha + beta * t1` with noise variance
/// `sigma^2 * t1`; later ones enter through their increment
/// `beta * dt` with noise variance `sigma^2 * dt`.
pub fn update_posterior(
    state: &DegradationState,
    new_obs: (f64, f64),
) -> Result<DegradationState, DegradationError> {
    state.prior.validate()?;
    let (time, amplitude) = new_obs;
    if !time.is_finite() || !amplitude.is_finite() {
        return Err(DegradationError::InvalidObservation(time, amplitude));
    }
    if time <= state.observation_time {
        return Err(DegradationError::NonIncreasingTime {
            last: state.observation_time,
            new: time,
        });
    }
    let sigma2 = state.posterior.sigma.powi(2);
    let posterior = match state.history.last() {
        None => state
            .posterior
            .condition([1.0, time], amplitude, sigma2 * time),
        Some(&(t_prev, d_prev)) => {
            let dt = time - t_prev;
            state
                .posterior
                .condition([0.0, dt], amplitude - d_prev, sigma2 * dt)
        }
    };
    let mut history = state.history.clone();
    history.push(new_obs);
    Ok(DegradationState {
        prior: state.prior,
        posterior,
        observed_amplitude: amplitude,
        observation_time: time,
        failure_threshold: state.failure_threshold,
        history,
    })
}

/// Posterior from the whole history in one pass, via the information form.
pub fn batch_posterior(
    prior: &BaselinePrior,
    history: &[(f64, f64)],
) -> Result<BaselinePrior, DegradationError> {
    prior.validate()?;
    let s = prior.cov();
    let det = s[0][0] * s[1][1] - s[0][1] * s[1][0];
    let mut p = [[s[1][1] / det, -s[0][1] / det], [-s[1][0] / det, s[0][0] / det]];
    let mut eta = [
        p[0][0] * prior.mean_alpha + p[0][1] * prior.mean_beta,
        p[1][0] * prior.mean_alpha + p[1][1] * prior.mean_beta,
    ];
    let sigma2 = prior.sigma.powi(2);
    let mut last: Option<(f64, f64)> = None;
    for &(t, d) in history {
        let (x, y, v) = match last {
            None => {
                if t <= 0.0 {
                    return Err(DegradationError::NonIncreasingTime { last: 0.0, new: t });
                }
                ([1.0, t], d, sigma2 * t)
            }
            Some((tp, dp)) => {
                if t <= tp {
                    return Err(DegradationError::NonIncreasingTime { last: tp, new: t });
                }
                ([0.0, t - tp], d - dp, sigma2 * (t - tp))
            }
        };
        for a in 0..2 {
            for b in 0..2 {
                p[a][b] += x[a] * x[b] / v;
            }
            eta[a] += x[a] * y / v;
        }
        last = Some((t, d));
    }
    let det = p[0][0] * p[1][1] - p[0][1] * p[1][0];
    let cov = [[p[1][1] / det, -p[0][1] / det], [-p[1][0] / det, p[0][0] / det]];
    let mean = [
        cov[0][0] * eta[0] + cov[0][1] * eta[1],
        cov[1][0] * eta[0] + cov[1][1] * eta[1],
    ];
    Ok(prior.with_moments(mean, cov))
}
