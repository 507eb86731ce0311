use std::collections::BTreeMap;

use serde::Serialize;

use super::config::{BigMPolicy, MilpConfig, TurbineBoundary};
use super::layout::{index_tuples, Dims, Layout};
use super::ledger::{ObjectiveTerm, Row, RowFamily, Sense, VarFamily, VarKind, Variable};
use super::MilpError;
use crate::scenario::{ScenarioSet, STH_HOURS};

/// Structural restrictions applied while building.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct BuildOptions {
    /// Only this yaw level may be selected (every other level is bounded to 0).
    pub pinned_yaw: Option<usize>,
}

/// Data-derived quantities the builder computes per `(i, s)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RulBounds {
    /// `[i * n_s + s]`
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

/// A fully built two-horizon stochastic MILP.
#[derive(Debug, Clone, PartialEq)]
pub struct MilpInstance {
    pub layout: Layout,
    pub variables: Vec<Variable>,
    pub rows: Vec<Row>,
    pub config: MilpConfig,
    pub boundaries: Vec<TurbineBoundary>,
    pub scenarios: ScenarioSet,
    pub options: BuildOptions,
    pub rul_bounds: RulBounds,
    /// Hourly interruption loss per scenario after defaulting.
    pub interruption_hourly: Vec<f64>,
    pub interruption_upfront: f64,
}

impl MilpInstance {
    pub fn dims(&self) -> Dims {
        self.layout.dims
    }

    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn var_counts(&self) -> BTreeMap<&'static str, usize> {
        let mut out = BTreeMap::new();
        for v in &self.variables {
            *out.entry(v.family.symbol()).or_insert(0) += 1;
        }
        out
    }

    pub fn row_counts(&self) -> BTreeMap<&'static str, usize> {
        let mut out = BTreeMap::new();
        for r in &self.rows {
            *out.entry(r.family.tag()).or_insert(0) += 1;
        }
        out
    }

    pub fn objective_coefficient(&self, var: usize) -> f64 {
        self.variables[var].cost()
    }

    /// Objective value of `values`, split into its four terms.
    pub fn objective_terms(&self, values: &[f64]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (v, x) in self.variables.iter().zip(values) {
            for k in 0..4 {
                out[k] += v.objective[k] * x;
            }
        }
        out
    }
}

struct Builder<'a> {
    cfg: &'a MilpConfig,
    sc: &'a ScenarioSet,
    bd: &'a [TurbineBoundary],
    lay: Layout,
    vars: Vec<Variable>,
    rows: Vec<Row>,
}

impl Builder<'_> {
    fn row(&mut self, family: RowFamily, terms: Vec<(usize, f64)>, sense: Sense, rhs: f64) {
        let terms = terms.into_iter().filter(|&(_, a)| a != 0.0).collect();
        self.rows.push(Row { family, terms, sense, rhs });
    }

    fn big_m(&self, tight: f64) -> f64 {
        match self.cfg.big_m {
            BigMPolicy::Tight => tight,
            BigMPolicy::Global(m) => m,
        }
    }
}

fn term(t: ObjectiveTerm, c: f64) -> [f64; 4] {
    let mut out = [0.0; 4];
    out[t as usize] = c;
    out
}

/// Build the full model with default options.
pub fn build(
    config: &MilpConfig,
    boundaries: &[TurbineBoundary],
    scenarios: &ScenarioSet,
) -> Result<MilpInstance, MilpError> {
    build_with(config, boundaries, scenarios, &BuildOptions::default())
}

pub fn build_with(
    config: &MilpConfig,
    boundaries: &[TurbineBoundary],
    scenarios: &ScenarioSet,
    options: &BuildOptions,
) -> Result<MilpInstance, MilpError> {
    config.validate()?;
    scenarios.validate()?;
    if boundaries.len() != scenarios.n_turbines {
        return Err(MilpError::Shape(format!(
            "{} boundaries for {} turbines",
            boundaries.len(),
            scenarios.n_turbines
        )));
    }
    for (i, b) in boundaries.iter().enumerate() {
        b.validate(i)?;
    }
    if let Some(j) = options.pinned_yaw {
        if j >= scenarios.n_levels {
            return Err(MilpError::Shape(format!("pinned yaw level {j} out of range")));
        }
    }

    let dims = Dims {
        hours: STH_HOURS,
        turbines: scenarios.n_turbines,
        levels: scenarios.n_levels,
        days: scenarios.n_days,
        scenarios: scenarios.n_scenarios,
    };
    let (n_t, n_i, n_j, n_d, n_s) = (dims.hours, dims.turbines, dims.levels, dims.days, dims.scenarios);
    let ns = n_s as f64;
    let lay = Layout::new(dims);
    let c = &config.costs;
    let rated = scenarios.rated_capacity;
    let allowed = |j: usize| options.pinned_yaw.map_or(true, |p| p == j);

    // Per-(i, s) nominal status and RUL bounds.
    let z0 = |i: usize, s: usize| f64::from(u8::from(scenarios.zeta0(i, s)));
    let z0l = |d: usize, i: usize, s: usize| f64::from(u8::from(scenarios.zeta0_lth(d, i, s)));
    let mut lam_lo = vec![0.0; n_i * n_s];
    let mut lam_hi = vec![0.0; n_i * n_s];
    for i in 0..n_i {
        for s in 0..n_s {
            let l0 = scenarios.rul0(i, s);
            let mut hi = l0 + z0(i, s);
            let mut lo = l0 + z0(i, s);
            for t in 0..n_t {
                let fmax = (0..n_j).filter(|&j| allowed(j)).map(|j| scenarios.factor(t, i, j, s)).fold(0.0, f64::max);
                lo -= z0(i, s) * fmax / n_t as f64;
            }
            for d in 0..n_d {
                let fmax =
                    (0..n_j).filter(|&j| allowed(j)).map(|j| scenarios.factor_lth(d, i, j, s)).fold(0.0, f64::max);
                hi += z0l(d, i, s);
                lo += z0l(d, i, s) * (1.0 - fmax);
            }
            lam_lo[i * n_s + s] = lo.max(0.0);
            lam_hi[i * n_s + s] = hi;
        }
    }

    // Dynamic maintenance cost rates are bounded by C_CM / t_c.
    let m_cost: Vec<f64> = boundaries.iter().map(|b| c.corrective / b.elapsed_days).collect();

    // Interruption costs.
    let upfront = c.interruption_upfront.unwrap_or(c.vessel_daily);
    let horizon_hours = n_t * (1 + n_d);
    let hourly: Vec<f64> = (0..n_s)
        .map(|s| {
            c.interruption_hourly.unwrap_or_else(|| {
                let p = &scenarios.price[s][..horizon_hours];
                rated * p.iter().sum::<f64>() / p.len() as f64
            })
        })
        .collect();

    // Hours of a short-term task that spill past midnight: [B - 25 + t]^+ with t = k + 1.
    let spill = |k: usize, i: usize, s: usize| (scenarios.mission(k, i, s) as f64 - (n_t - k) as f64).max(0.0);

    use ObjectiveTerm::*;
    use VarKind::*;
    let mut vars = Vec::with_capacity(lay.len());
    for family in VarFamily::ALL {
        for idx in index_tuples(&dims, family) {
            let (kind, lower, upper, objective) = match family {
                VarFamily::Yaw => (Binary, 0.0, if allowed(idx[2]) { 1.0 } else { 0.0 }, [0.0; 4]),
                VarFamily::YawLth => (Binary, 0.0, if allowed(idx[2]) { 1.0 } else { 0.0 }, [0.0; 4]),
                VarFamily::Maint => {
                    let i = idx[1];
                    let l0: f64 = (0..n_s).map(|s| scenarios.rul0(i, s)).sum();
                    (Binary, 0.0, 1.0, term(EndOfHorizon, -c.rul_daily * l0 / ns))
                }
                VarFamily::MaintLth => {
                    let (d, i, s) = (idx[0], idx[1], idx[2]);
                    let mut obj = term(LongTermProfit, -c.crew_hourly * scenarios.mission_lth(d, i, s) as f64 / ns);
                    let lost = (scenarios.rul0(i, s) - (d + 1) as f64).max(0.0);
                    obj[EndOfHorizon as usize] = -c.rul_daily * lost / ns;
                    (Binary, 0.0, 1.0, obj)
                }
                VarFamily::Rul => {
                    let k = idx[0] * n_s + idx[1];
                    (Continuous, lam_lo[k], lam_hi[k], term(EndOfHorizon, c.rul_daily / ns))
                }
                VarFamily::Status | VarFamily::StatusLth | VarFamily::Trigger | VarFamily::UnderMaint => {
                    (Binary, 0.0, 1.0, [0.0; 4])
                }
                VarFamily::Crew => (Binary, 0.0, 1.0, term(ShortTermProfit, -c.crew_hourly / ns)),
                VarFamily::Avail | VarFamily::AvailLth => (Binary, 0.0, 1.0, [0.0; 4]),
                VarFamily::Interrupted => (Binary, 0.0, 1.0, term(ProlongedInterruptions, -upfront / ns)),
                VarFamily::Power => {
                    let (t, s) = (idx[0], idx[2]);
                    (Continuous, 0.0, rated, term(ShortTermProfit, scenarios.price(t, s) / ns))
                }
                VarFamily::PowerLth => {
                    let (d, s) = (idx[0], idx[2]);
                    (Continuous, 0.0, 24.0 * rated, term(LongTermProfit, scenarios.price_daily(d, s) / ns))
                }
                VarFamily::Overtime => (
                    if config.relax_overtime { Continuous } else { Integer },
                    0.0,
                    f64::INFINITY,
                    term(ShortTermProfit, -c.overtime_hourly / ns),
                ),
                VarFamily::OvertimeLth => {
                    (Continuous, 0.0, f64::INFINITY, term(LongTermProfit, -c.overtime_hourly / ns))
                }
                VarFamily::Vessel => (Binary, 0.0, 1.0, term(ShortTermProfit, -c.vessel_daily)),
                VarFamily::VesselLth => (Binary, 0.0, 1.0, term(LongTermProfit, -c.vessel_daily / ns)),
                VarFamily::Backlog => {
                    let (i, s) = (idx[0], idx[1]);
                    let cap = (0..n_t).map(|k| spill(k, i, s)).fold(0.0, f64::max);
                    (Integer, 0.0, cap, term(ProlongedInterruptions, -hourly[s] / ns))
                }
                VarFamily::RepairCost => {
                    let i = idx[1];
                    let w = (1.0 - boundaries[i].rho()) * boundaries[i].criticality;
                    (Continuous, 0.0, m_cost[i], term(ShortTermProfit, -w))
                }
                VarFamily::RepairCostLth => {
                    let i = idx[1];
                    let w = (1.0 - boundaries[i].rho()) * boundaries[i].criticality;
                    (Continuous, 0.0, m_cost[i], term(LongTermProfit, -w / ns))
                }
                VarFamily::Dmc | VarFamily::DmcStatus => (Continuous, 0.0, m_cost[idx[0]], [0.0; 4]),
                VarFamily::DmcLth | VarFamily::DmcStatusLthBase => (Continuous, 0.0, m_cost[idx[1]], [0.0; 4]),
                VarFamily::DmcStatusLth => (Continuous, 0.0, m_cost[idx[2]], [0.0; 4]),
            };
            vars.push(Variable { family, index: idx, kind, lower, upper, objective });
        }
    }
    debug_assert_eq!(vars.len(), lay.len());

    let mut b = Builder { cfg: config, sc: scenarios, bd: boundaries, lay, vars, rows: Vec::new() };
    add_rows(&mut b, &lam_lo, &lam_hi, &m_cost, &spill);

    Ok(MilpInstance {
        layout: b.lay,
        variables: b.vars,
        rows: b.rows,
        config: config.clone(),
        boundaries: boundaries.to_vec(),
        scenarios: scenarios.clone(),
        options: *options,
        rul_bounds: RulBounds { lower: lam_lo, upper: lam_hi },
        interruption_hourly: hourly,
        interruption_upfront: upfront,
    })
}

fn add_rows(
    b: &mut Builder<'_>,
    lam_lo: &[f64],
    lam_hi: &[f64],
    m_cost: &[f64],
    spill: &dyn Fn(usize, usize, usize) -> f64,
) {
    use RowFamily as R;
    use Sense::*;
    let dims = b.lay.dims;
    let (n_t, n_i, n_j, n_d, n_s) = (dims.hours, dims.turbines, dims.levels, dims.days, dims.scenarios);
    let ns = n_s as f64;
    let sc = b.sc;
    let cfg = b.cfg;
    let costs = cfg.costs;
    let rated = sc.rated_capacity;
    let l = b.lay.clone();
    let z0 = |i: usize, s: usize| f64::from(u8::from(sc.zeta0(i, s)));
    let z0l = |d: usize, i: usize, s: usize| f64::from(u8::from(sc.zeta0_lth(d, i, s)));
    let rho = |i: usize| b.bd[i].rho();
    let rhos: Vec<f64> = (0..n_i).map(rho).collect();
    let t_c: Vec<f64> = b.bd.iter().map(|x| x.elapsed_days).collect();

    // At most one yaw level per period.
    for t in 0..n_t {
        for i in 0..n_i {
            let terms = (0..n_j).map(|j| (l.yaw(t, i, j), 1.0)).collect();
            b.row(R::YawChoiceSth, terms, Le, 1.0);
        }
    }
    for d in 0..n_d {
        for i in 0..n_i {
            for s in 0..n_s {
                let terms = (0..n_j).map(|j| (l.yaw_lth(d, i, j, s), 1.0)).collect();
                b.row(R::YawChoiceLth, terms, Le, 1.0);
            }
        }
    }

    // RUL at the horizon end: nominal RUL plus the life gained or lost by the
    // chosen loading in every period the turbine is nominally alive.
    for i in 0..n_i {
        for s in 0..n_s {
            let mut terms = vec![(l.rul(i, s), 1.0)];
            let mut rhs = sc.rul0(i, s) + z0(i, s);
            for t in 0..n_t {
                for j in 0..n_j {
                    terms.push((l.yaw(t, i, j), z0(i, s) * sc.factor(t, i, j, s) / n_t as f64));
                }
            }
            for d in 0..n_d {
                rhs += z0l(d, i, s);
                for j in 0..n_j {
                    terms.push((l.yaw_lth(d, i, j, s), z0l(d, i, s) * sc.factor_lth(d, i, j, s)));
                }
            }
            b.row(R::RulEmbedding, terms, Eq, rhs);
        }
    }

    // Operational status: zeta = 1 iff lambda >= 1; zetaL[d] = 1 iff lambda >= d.
    for i in 0..n_i {
        for s in 0..n_s {
            let k = i * n_s + s;
            let (lam, zeta) = (l.rul(i, s), l.status(i, s));
            b.row(R::StatusSthLower, vec![(lam, 1.0), (zeta, -1.0)], Ge, 0.0);
            let m = b.big_m((lam_hi[k] - 1.0).max(0.0));
            b.row(R::StatusSthUpper, vec![(lam, 1.0), (zeta, -m)], Le, 1.0);
        }
    }
    for d in 0..n_d {
        let day = (d + 1) as f64;
        for i in 0..n_i {
            for s in 0..n_s {
                let k = i * n_s + s;
                let (lam, zeta) = (l.rul(i, s), l.status_lth(d, i, s));
                b.row(R::StatusLthLower, vec![(lam, 1.0), (zeta, -day)], Ge, 0.0);
                let m = b.big_m((lam_hi[k] - day).max(0.0));
                b.row(R::StatusLthUpper, vec![(lam, 1.0), (zeta, -m)], Le, day);
            }
        }
    }

    // am = c * m.
    for t in 0..n_t {
        for i in 0..n_i {
            let m = b.big_m(m_cost[i]);
            let (a, mm, cc) = (l.repair_cost(t, i), l.maint(t, i), l.dmc(i));
            b.row(R::RepairCostSthOff, vec![(a, 1.0), (mm, -m)], Le, 0.0);
            b.row(R::RepairCostSthCap, vec![(a, 1.0), (cc, -1.0)], Le, 0.0);
            b.row(R::RepairCostSthOn, vec![(a, 1.0), (cc, -1.0), (mm, -m)], Ge, -m);
        }
    }
    // amL = cL * mL.
    for d in 0..n_d {
        for i in 0..n_i {
            let m = b.big_m(m_cost[i]);
            for s in 0..n_s {
                let (a, mm, cc) = (l.repair_cost_lth(d, i, s), l.maint_lth(d, i, s), l.dmc_lth(d, i));
                b.row(R::RepairCostLthOff, vec![(a, 1.0), (mm, -m)], Le, 0.0);
                b.row(R::RepairCostLthCap, vec![(a, 1.0), (cc, -1.0)], Le, 0.0);
                b.row(R::RepairCostLthOn, vec![(a, 1.0), (cc, -1.0), (mm, -m)], Ge, -m);
            }
        }
    }

    // Exactly theta maintenance starts per turbine in every scenario.
    for i in 0..n_i {
        for s in 0..n_s {
            let mut terms: Vec<_> = (0..n_t).map(|t| (l.maint(t, i), 1.0)).collect();
            terms.extend((0..n_d).map(|d| (l.maint_lth(d, i, s), 1.0)));
            terms.push((l.trigger(i), -1.0));
            b.row(R::MaintenanceAssignment, terms, Eq, 0.0);
        }
    }
    // theta = 1 whenever some scenario's RUL falls below the threshold.
    for i in 0..n_i {
        for s in 0..n_s {
            let m = b.big_m((cfg.theta_threshold - lam_lo[i * n_s + s]).max(0.0));
            b.row(R::MaintenanceTrigger, vec![(l.rul(i, s), -1.0), (l.trigger(i), -m)], Le, -cfg.theta_threshold);
        }
    }

    // A task started at hour t (1-based) keeps the turbine under maintenance
    // through hour min(24, t + B - 1); 0-based k = t - 1.
    for k in 0..n_t {
        for i in 0..n_i {
            for s in 0..n_s {
                let dur = sc.mission(k, i, s) as usize;
                let last = (k + dur).min(n_t);
                let mut terms: Vec<_> = (k..last).map(|h| (l.under_maint(h, i, s), 1.0)).collect();
                terms.push((l.maint(k, i), -((n_t - k).min(dur) as f64)));
                b.row(R::TaskDuration, terms, Ge, 0.0);
            }
        }
    }
    // Hours of short-term tasks left for the first long-term day, and the flag.
    for i in 0..n_i {
        for s in 0..n_s {
            let mut terms = vec![(l.backlog(i, s), 1.0)];
            terms.extend((0..n_t).map(|k| (l.maint(k, i), -spill(k, i, s))));
            b.row(R::BacklogHours, terms, Ge, 0.0);
            let m = b.big_m((0..n_t).map(|k| spill(k, i, s)).fold(0.0, f64::max));
            b.row(R::BacklogFlag, vec![(l.backlog(i, s), 1.0), (l.interrupted(i, s), -m)], Le, 0.0);
        }
    }

    // Crews are occupied by work before last light and limited in number.
    let last_light = cfg.last_light as f64;
    for k in 0..n_t {
        for i in 0..n_i {
            for s in 0..n_s {
                let t = (k + 1) as f64;
                b.row(
                    R::CrewOccupation,
                    vec![(l.crew(k, i, s), 1.0), (l.under_maint(k, i, s), -1.0)],
                    Ge,
                    -t / last_light,
                );
            }
        }
    }
    for k in 0..n_t {
        for s in 0..n_s {
            let terms = (0..n_i).map(|i| (l.crew(k, i, s), 1.0)).collect();
            b.row(R::CrewLimit, terms, Le, f64::from(cfg.crews));
        }
    }

    // Availability is restored only by a maintenance start (or kept while operational).
    for k in 0..n_t {
        let t = k + 1;
        for i in 0..n_i {
            for s in 0..n_s {
                let mut terms;
                if t < n_t {
                    let w = (n_t - t) as f64;
                    terms = vec![(l.avail(k, i, s), w), (l.status(i, s), -w * (1.0 - rhos[i]))];
                    terms.extend((0..=k).map(|tau| (l.maint(tau, i), -((n_t - (tau + 1)) as f64))));
                } else {
                    terms = vec![(l.avail(k, i, s), 1.0), (l.status(i, s), -(1.0 - rhos[i]))];
                    terms.extend((0..n_t - 1).map(|tau| (l.maint(tau, i), -1.0)));
                }
                b.row(R::AvailabilitySth, terms, Le, 0.0);
            }
        }
    }
    for d in 0..n_d {
        let day = d + 1;
        for i in 0..n_i {
            for s in 0..n_s {
                let mut terms;
                if day < n_d {
                    let w = (n_d - day) as f64;
                    terms = vec![(l.avail_lth(d, i, s), w), (l.status_lth(d, i, s), -w * (1.0 - rhos[i]))];
                    terms.extend((0..=d).map(|e| (l.maint_lth(e, i, s), -((n_d - (e + 1)) as f64))));
                    terms.extend((0..n_t).map(|k| (l.maint(k, i), -w)));
                } else {
                    terms = vec![(l.avail_lth(d, i, s), 1.0), (l.status_lth(d, i, s), -(1.0 - rhos[i]))];
                    terms.extend((0..d).map(|e| (l.maint_lth(e, i, s), -1.0)));
                    terms.extend((0..n_t).map(|k| (l.maint(k, i), -1.0)));
                }
                b.row(R::AvailabilityLth, terms, Le, 0.0);
            }
        }
    }
    for k in 0..n_t {
        for i in 0..n_i {
            for s in 0..n_s {
                b.row(
                    R::UnavailableUnderMaintenance,
                    vec![(l.avail(k, i, s), 1.0), (l.under_maint(k, i, s), 1.0)],
                    Le,
                    1.0,
                );
            }
        }
    }

    // Power caps.
    for k in 0..n_t {
        for i in 0..n_i {
            for s in 0..n_s {
                let mut terms = vec![(l.power(k, i, s), 1.0)];
                terms.extend((0..n_j).map(|j| (l.yaw(k, i, j), -rated * sc.power(k, i, j, s))));
                b.row(R::PowerYawSth, terms, Le, 0.0);
            }
        }
    }
    for d in 0..n_d {
        for i in 0..n_i {
            for s in 0..n_s {
                let mut terms = vec![(l.power_lth(d, i, s), 1.0)];
                terms.extend((0..n_j).map(|j| (l.yaw_lth(d, i, j, s), -24.0 * rated * sc.power_lth(d, i, j, s))));
                b.row(R::PowerYawLth, terms, Le, 0.0);
            }
        }
    }
    for k in 0..n_t {
        for i in 0..n_i {
            for s in 0..n_s {
                b.row(R::PowerAvailabilitySth, vec![(l.power(k, i, s), 1.0), (l.avail(k, i, s), -rated)], Le, 0.0);
            }
        }
    }
    for d in 0..n_d {
        for i in 0..n_i {
            for s in 0..n_s {
                b.row(
                    R::PowerAvailabilityLth,
                    vec![(l.power_lth(d, i, s), 1.0), (l.avail_lth(d, i, s), -24.0 * rated)],
                    Le,
                    0.0,
                );
            }
        }
    }
    for d in 0..n_d {
        for i in 0..n_i {
            for s in 0..n_s {
                let fmax = sc.power_lth_max(d, i, s);
                let busy = (sc.mission_lth(d, i, s) as f64).min(24.0);
                b.row(
                    R::PowerMissionLth,
                    vec![(l.power_lth(d, i, s), 1.0), (l.maint_lth(d, i, s), rated * fmax * busy)],
                    Le,
                    24.0 * rated * fmax,
                );
            }
        }
    }

    // Vessel rentals.
    let m_vessel = b.big_m(n_i as f64);
    let mut terms: Vec<_> = (0..n_t).flat_map(|k| (0..n_i).map(move |i| (k, i))).map(|(k, i)| (l.maint(k, i), 1.0)).collect();
    terms.push((l.vessel(), -m_vessel));
    b.row(R::VesselSth, terms, Le, 0.0);
    for d in 0..n_d {
        for s in 0..n_s {
            let mut terms: Vec<_> = (0..n_i).map(|i| (l.maint_lth(d, i, s), 1.0)).collect();
            terms.push((l.vessel_lth(d, s), -m_vessel));
            b.row(R::VesselLth, terms, Le, 0.0);
        }
    }

    // Work hours and overtime.
    let regular = f64::from(cfg.crews) * cfg.regular_hours;
    for s in 0..n_s {
        let mut terms: Vec<_> =
            (0..n_t).flat_map(|k| (0..n_i).map(move |i| (k, i))).map(|(k, i)| (l.crew(k, i, s), 1.0)).collect();
        terms.push((l.overtime(s), -1.0));
        b.row(R::WorkHoursSth, terms, Le, regular);
    }
    for s in 0..n_s {
        b.row(R::OvertimeCapSth, vec![(l.overtime(s), 1.0)], Le, cfg.overtime_cap);
    }
    for s in 0..n_s {
        let mut terms = Vec::new();
        for i in 0..n_i {
            terms.push((l.maint_lth(0, i, s), sc.mission_lth(0, i, s) as f64));
            terms.push((l.backlog(i, s), 1.0));
        }
        terms.push((l.overtime_lth(0, s), -1.0));
        b.row(R::WorkHoursLthFirst, terms, Le, regular);
    }
    for d in 1..n_d {
        for s in 0..n_s {
            let mut terms: Vec<_> = (0..n_i).map(|i| (l.maint_lth(d, i, s), sc.mission_lth(d, i, s) as f64)).collect();
            terms.push((l.overtime_lth(d, s), -1.0));
            b.row(R::WorkHoursLth, terms, Le, regular);
        }
    }
    for d in 0..n_d {
        for s in 0..n_s {
            b.row(R::OvertimeCapLth, vec![(l.overtime_lth(d, s), 1.0)], Le, cfg.overtime_cap);
        }
    }

    // Dynamic maintenance cost of a long-term start on day d:
    // cL * (sum zeta + sum_{e<=d} sum zetaL[e] + N_S t_c) = C_PM sum zetaL[d] + C_CM (N_S - sum zetaL[d]).
    let spread = costs.corrective - costs.preventive;
    for d in 0..n_d {
        for i in 0..n_i {
            let mut terms = Vec::new();
            for s in 0..n_s {
                terms.push((l.dmc_status_lth_base(d, i, s), 1.0));
                for e in 0..=d {
                    terms.push((l.dmc_status_lth(e, d, i, s), 1.0));
                }
                terms.push((l.status_lth(d, i, s), spread));
            }
            terms.push((l.dmc_lth(d, i), ns * t_c[i]));
            b.row(R::DmcLth, terms, Eq, costs.corrective * ns);
        }
    }
    for d in 0..n_d {
        for i in 0..n_i {
            let m = b.big_m(m_cost[i]);
            for s in 0..n_s {
                let (a, z, cc) = (l.dmc_status_lth_base(d, i, s), l.status(i, s), l.dmc_lth(d, i));
                b.row(R::DmcLthBaseOff, vec![(a, 1.0), (z, -m)], Le, 0.0);
                b.row(R::DmcLthBaseCap, vec![(a, 1.0), (cc, -1.0)], Le, 0.0);
                b.row(R::DmcLthBaseOn, vec![(a, 1.0), (cc, -1.0), (z, -m)], Ge, -m);
            }
        }
    }
    for d in 0..n_d {
        for e in 0..=d {
            for i in 0..n_i {
                let m = b.big_m(m_cost[i]);
                for s in 0..n_s {
                    let (a, z, cc) = (l.dmc_status_lth(e, d, i, s), l.status_lth(e, i, s), l.dmc_lth(d, i));
                    b.row(R::DmcLthDayOff, vec![(a, 1.0), (z, -m)], Le, 0.0);
                    b.row(R::DmcLthDayCap, vec![(a, 1.0), (cc, -1.0)], Le, 0.0);
                    b.row(R::DmcLthDayOn, vec![(a, 1.0), (cc, -1.0), (z, -m)], Ge, -m);
                }
            }
        }
    }
    // Short-term rate: c * (sum zeta + N_S t_c) = C_PM sum zeta + C_CM (N_S - sum zeta).
    for i in 0..n_i {
        let mut terms = Vec::new();
        for s in 0..n_s {
            terms.push((l.dmc_status(i, s), 1.0));
            terms.push((l.status(i, s), spread));
        }
        terms.push((l.dmc(i), ns * t_c[i]));
        b.row(R::DmcSth, terms, Eq, costs.corrective * ns);
    }
    for i in 0..n_i {
        let m = b.big_m(m_cost[i]);
        for s in 0..n_s {
            let (a, z, cc) = (l.dmc_status(i, s), l.status(i, s), l.dmc(i));
            b.row(R::DmcSthStatusOff, vec![(a, 1.0), (z, -m)], Le, 0.0);
            b.row(R::DmcSthStatusCap, vec![(a, 1.0), (cc, -1.0)], Le, 0.0);
            b.row(R::DmcSthStatusOn, vec![(a, 1.0), (cc, -1.0), (z, -m)], Ge, -m);
        }
    }
}
