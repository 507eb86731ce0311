//! Joint short-term yaw control and long-term maintenance scheduling for an
//! offshore wind farm, solved as a two-horizon stochastic MILP and evaluated in a
//! closed-loop rolling-horizon simulation.

pub mod degradation;
pub mod rng;
pub mod power;
pub mod scenario;
pub mod milp;
pub mod policies;
pub mod config;
pub mod harness;
