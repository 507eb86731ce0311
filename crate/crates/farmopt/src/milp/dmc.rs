use super::config::Costs;
use super::MilpError;

/// Scenario counts of operational status: `sth = sum_s zeta[s]` and
/// `lth[d] = sum_s zetaL[d, s]` (index `d` is long-term day `d + 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaCounts {
    pub sth: f64,
    pub lth: Vec<f64>,
}

/// Dynamic maintenance cost rate (currency per day of life) of a task started
/// `day` periods after observation; `day = 0` is the short-term day.
///
/// The rate is the expected repair cost over the expected cycle length:
/// preventive in scenarios where the turbine still runs, corrective in the rest,
/// divided by the days lived so far plus the scenario-averaged days still alive.
pub fn dmc_direct(day: usize, counts: &ZetaCounts, n_scenarios: usize, costs: &Costs, t_c: f64) -> Result<f64, MilpError> {
    let ns = n_scenarios as f64;
    let in_range = |z: f64| (0.0..=ns).contains(&z);
    if !in_range(counts.sth) || !counts.lth.iter().all(|&z| in_range(z)) {
        return Err(MilpError::Shape(format!("status counts must lie in [0, {n_scenarios}]")));
    }
    if day > counts.lth.len() {
        return Err(MilpError::Shape(format!("day {day} beyond {} long-term days", counts.lth.len())));
    }
    let alive = if day == 0 { counts.sth } else { counts.lth[day - 1] };
    let numerator = costs.preventive * alive + costs.corrective * (ns - alive);
    let denominator = counts.sth + counts.lth[..day].iter().sum::<f64>() + ns * t_c;
    if denominator == 0.0 {
        return Err(MilpError::Division(format!("zero cycle length at day {day} with t_c = {t_c}")));
    }
    Ok(numerator / denominator)
}
