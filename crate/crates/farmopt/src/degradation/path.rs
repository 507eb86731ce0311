use rand::{Rng, RngExt};
use rand_distr::{Distribution, StandardNormal};

/// One Euler step of the time-transformed signal: over a calendar step `dt`
/// at load factor `psi` the drift is `beta * psi * dt` and the diffusion
/// variance `sigma^2 * psi * dt`.
pub fn step_amplitude(amplitude: f64, beta: f64, sigma: f64, psi: f64, dt: f64, z: f64) -> f64 {
    amplitude + beta * psi * dt + sigma * (psi * dt).sqrt() * z
}

/// Calendar time at which a simulated transformed path first reaches `threshold`.
///
/// `psi(t)` gives the load factor at calendar time `t`. Crossings between grid
/// points are detected with the Brownian-bridge probability, so the estimate
/// does not drift upward as `dt` grows. Returns `None` if no crossing happens
/// before `max_time`.
pub fn simulate_first_passage<R, P>(
    start: f64,
    threshold: f64,
    beta: f64,
    sigma: f64,
    psi: P,
    dt: f64,
    max_time: f64,
    rng: &mut R,
) -> Option<f64>
where
    R: Rng + ?Sized,
    P: Fn(f64) -> f64,
{
    if start >= threshold {
        return Some(0.0);
    }
    let mut t = 0.0;
    let mut x = start;
    while t < max_time {
        let load = psi(t);
        let z: f64 = StandardNormal.sample(rng);
        let next = step_amplitude(x, beta, sigma, load, dt, z);
        if next >= threshold {
            return Some(t + dt * rng.random::<f64>());
        }
        let var = sigma * sigma * load * dt;
        if var > 0.0 {
            let p_cross = (-2.0 * (threshold - x) * (threshold - next) / var).exp();
            if rng.random::<f64>() < p_cross {
                return Some(t + dt * rng.random::<f64>());
            }
        }
        x = next;
        t += dt;
    }
    None
}
