//! Shared fixtures for integration tests: random tiny optimizer instances and
//! an exhaustive-enumeration oracle for their optimal objective.
#![allow(dead_code)]

use farmopt::degradation::{rul_after_loading, LoadedPeriod};
use farmopt::milp::{
    build, dmc_direct, solve, verify_solution, Costs, HighsBackend, MilpConfig, MilpInstance, MilpSolution,
    SolveStatus, TurbineBoundary, ZetaCounts,
};
use farmopt::power::PowerTable;
use farmopt::scenario::{DeriveDiagnostics, ScenarioSet, STH_HOURS};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const RATED: f64 = 5.0;

/// Shape of a random tiny instance.
#[derive(Debug, Clone, Copy)]
pub struct TinyShape {
    pub turbines: usize,
    pub days: usize,
    pub scenarios: usize,
}

/// A random scenario set with two yaw levels. Short-term relative-RUL factors
/// and scaled powers are constant across the 24 hours of each scenario (the
/// enumeration oracle relies on it); prices, mission times and every long-term
/// quantity vary freely.
pub fn random_set(shape: TinyShape, seed: u64) -> ScenarioSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let TinyShape { turbines: n_i, days: n_d, scenarios: n_s } = shape;
    let n_j = 2;
    let hours = STH_HOURS * (1 + n_d);

    let price: Vec<Vec<f64>> = (0..n_s).map(|_| (0..hours).map(|_| rng.random_range(10.0..60.0)).collect()).collect();
    let wind: Vec<Vec<f64>> = (0..n_s).map(|_| (0..hours).map(|_| rng.random_range(3.0..14.0)).collect()).collect();
    let wave: Vec<Vec<f64>> = (0..n_s).map(|_| (0..hours).map(|_| rng.random_range(0.2..2.0)).collect()).collect();
    let daily = |v: &Vec<Vec<f64>>| -> Vec<Vec<f64>> {
        v.iter()
            .map(|row| (0..n_d).map(|d| row[24 * (d + 1)..24 * (d + 2)].iter().sum::<f64>() / 24.0).collect())
            .collect()
    };

    let rul0: Vec<f64> = (0..n_i * n_s)
        .map(|_| match rng.random_range(0..4) {
            0 => rng.random_range(0.0..1.0),
            1 => rng.random_range(1.0..3.5),
            2 => rng.random_range(3.5..6.0),
            _ => rng.random_range(6.0..12.0),
        })
        .collect();

    let mut factor_sth = vec![0.0; STH_HOURS * n_i * n_j * n_s];
    let mut sth = vec![0.0; STH_HOURS * n_i * n_j * n_s];
    for i in 0..n_i {
        for s in 0..n_s {
            let f0 = rng.random_range(0.2..1.0);
            let f1 = f0 * rng.random_range(0.7..1.0);
            let big = rng.random_range(0.6..2.5);
            let small = big * rng.random_range(0.3..1.0);
            for t in 0..STH_HOURS {
                let k = |j: usize| ((t * n_i + i) * n_j + j) * n_s + s;
                sth[k(0)] = f0;
                sth[k(1)] = f1;
                factor_sth[k(0)] = big;
                factor_sth[k(1)] = small;
            }
        }
    }
    let mut factor_lth = vec![0.0; n_d * n_i * n_j * n_s];
    let mut lth = vec![0.0; n_d * n_i * n_j * n_s];
    let mut lth_max = vec![0.0; n_d * n_i * n_s];
    for d in 0..n_d {
        for i in 0..n_i {
            for s in 0..n_s {
                let k = |j: usize| ((d * n_i + i) * n_j + j) * n_s + s;
                let f0 = rng.random_range(0.1..1.0);
                lth[k(0)] = f0;
                lth[k(1)] = f0 * rng.random_range(0.7..1.0);
                factor_lth[k(0)] = rng.random_range(0.6..2.5);
                factor_lth[k(1)] = factor_lth[k(0)] * rng.random_range(0.3..1.0);
                lth_max[(d * n_i + i) * n_s + s] = f0;
            }
        }
    }
    // Half of the instances get long short-term missions that spill heavily
    // into the next day, which pushes maintenance into the long-term horizon.
    let sth_range = if rng.random_range(0..2) == 0 { 1..40 } else { 20..60 };
    let mission_sth = (0..STH_HOURS * n_i * n_s).map(|_| rng.random_range(sth_range.clone())).collect();
    let mission_lth = (0..n_d * n_i * n_s).map(|_| rng.random_range(4..30)).collect();

    ScenarioSet {
        n_scenarios: n_s,
        n_turbines: n_i,
        n_days: n_d,
        n_levels: n_j,
        yaw_levels: vec![0.0, 5.0],
        rated_capacity: RATED,
        wind_daily: daily(&wind),
        wave_daily: daily(&wave),
        price_daily: daily(&price),
        wind,
        wave,
        price,
        rul0,
        factor_sth,
        factor_lth,
        power: PowerTable {
            n_hours: STH_HOURS,
            n_days: n_d,
            n_turbines: n_i,
            n_levels: n_j,
            n_scenarios: n_s,
            sth,
            lth,
            lth_max,
        },
        mission_sth,
        mission_lth,
        diagnostics: DeriveDiagnostics::default(),
    }
}

pub fn random_boundaries(n_i: usize, seed: u64) -> Vec<TurbineBoundary> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    (0..n_i)
        .map(|_| {
            let carried = rng.random_range(0..5) == 0;
            TurbineBoundary {
                carried_task: carried,
                carried_hours: 0,
                criticality: rng.random_range(0.5..1.5),
                elapsed_days: rng.random_range(1.0..30.0),
                days_since_maintenance: 0.0,
                failed: false,
            }
        })
        .collect()
}

/// Table I costs, a 3-day trigger threshold so both trigger regimes occur,
/// and an exact optimality gap.
pub fn tiny_config() -> MilpConfig {
    MilpConfig {
        theta_threshold: 3.0,
        mip_gap: 1e-9,
        time_limit_secs: 60.0,
        ..MilpConfig::default()
    }
}

pub fn tiny_shape(seed: u64) -> TinyShape {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xface);
    TinyShape {
        turbines: rng.random_range(1..=2),
        days: rng.random_range(1..=2),
        scenarios: rng.random_range(1..=2),
    }
}

/// Outcome of solving one random tiny instance and checking it independently.
#[derive(Debug, Clone)]
pub struct TinyCheck {
    pub seed: u64,
    pub shape: TinyShape,
    pub status: SolveStatus,
    pub objective: f64,
    pub oracle: Option<f64>,
    /// `|milp - oracle| / max(1, |oracle|)`; `None` when either side has no optimum.
    pub objective_rel: Option<f64>,
    pub verify_clean: bool,
    pub violations: usize,
    /// Largest relative gap between a solved rate column and `dmc_direct`.
    pub dmc_rel: f64,
    /// Largest absolute gap between a solved RUL column and `rul_after_loading`.
    pub rul_abs: f64,
    pub long_term_starts: usize,
}

impl TinyCheck {
    /// Solver and oracle agree (both optimal or both infeasible) and every check holds.
    pub fn objective_ok(&self) -> bool {
        match (self.status, self.oracle) {
            (SolveStatus::OptimalWithinGap, Some(_)) => self.objective_rel.is_some_and(|r| r <= 1e-6),
            (SolveStatus::Infeasible, None) => true,
            _ => false,
        }
    }
}

pub fn check_tiny(seed: u64) -> TinyCheck {
    let shape = tiny_shape(seed);
    let set = random_set(shape, seed);
    let bd = random_boundaries(shape.turbines, seed);
    let cfg = tiny_config();
    let inst = build(&cfg, &bd, &set).expect("tiny instance builds");
    let sol = solve(&inst, &HighsBackend);
    let oracle = brute_force(&cfg, &bd, &set);
    let mut out = TinyCheck {
        seed,
        shape,
        status: sol.status,
        objective: sol.objective,
        oracle,
        objective_rel: None,
        verify_clean: true,
        violations: 0,
        dmc_rel: 0.0,
        rul_abs: 0.0,
        long_term_starts: sol.lth_maintenance.iter().flatten().flatten().filter(|&&b| b).count(),
    };
    if sol.status.has_solution() {
        let report = verify_solution(&inst, &sol);
        out.verify_clean = report.is_clean();
        out.violations = report.violated.len();
        out.dmc_rel = dmc_gap(&inst, &sol);
        out.rul_abs = rul_gap(&inst, &sol);
        out.objective_rel = oracle.map(|o| (sol.objective - o).abs() / o.abs().max(1.0));
    }
    out
}

/// Compare every solved rate column with the direct ratio evaluated on the
/// solution's operational-status counts.
pub fn dmc_gap(inst: &MilpInstance, sol: &MilpSolution) -> f64 {
    let n = inst.dims();
    let l = &inst.layout;
    let mut worst = 0.0f64;
    for (i, b) in inst.boundaries.iter().enumerate() {
        let count = |k: &dyn Fn(usize) -> usize| (0..n.scenarios).map(|s| sol.value(k(s)).round()).sum::<f64>();
        let counts = ZetaCounts {
            sth: count(&|s| l.status(i, s)),
            lth: (0..n.days).map(|d| count(&|s| l.status_lth(d, i, s))).collect(),
        };
        for day in 0..=n.days {
            let direct = dmc_direct(day, &counts, n.scenarios, &inst.config.costs, b.elapsed_days).unwrap();
            let solved = if day == 0 { sol.value(l.dmc(i)) } else { sol.value(l.dmc_lth(day - 1, i)) };
            worst = worst.max((solved - direct).abs() / direct.abs().max(1e-12));
        }
    }
    worst
}

/// Recompute each scenario's horizon-end RUL by applying the hourly and daily
/// relative-RUL factors of the chosen yaw levels over the nominally alive periods.
pub fn rul_gap(inst: &MilpInstance, sol: &MilpSolution) -> f64 {
    let n = inst.dims();
    let sc = &inst.scenarios;
    let mut worst = 0.0f64;
    for i in 0..n.turbines {
        for s in 0..n.scenarios {
            let mut periods = Vec::new();
            if sc.zeta0(i, s) {
                for t in 0..n.hours {
                    let f = sol.sth_yaw[t][i].map_or(0.0, |j| sc.factor(t, i, j, s));
                    periods.push(LoadedPeriod::hour(f));
                }
            }
            for d in 0..n.days {
                if sc.zeta0_lth(d, i, s) {
                    let f = sol.lth_yaw[d][i][s].map_or(0.0, |j| sc.factor_lth(d, i, j, s));
                    periods.push(LoadedPeriod::day(f));
                }
            }
            let direct = rul_after_loading(sc.rul0(i, s), &periods).unwrap();
            worst = worst.max((sol.value(inst.layout.rul(i, s)) - direct).abs());
        }
    }
    worst
}

// ---------------------------------------------------------------------------
// Enumeration oracle
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Plan {
    Idle,
    Sth(usize),
    /// Long-term start day per scenario.
    Lth(Vec<usize>),
}

/// What a turbine's maintenance plan contributes to the farm-level resources.
struct PlanUse {
    plan: Plan,
    /// Value of the best yaw schedule plus every turbine-local cost.
    value: f64,
    /// `crew[t][s]`
    crew: Vec<Vec<bool>>,
    /// Work hours booked on long-term day `d` in scenario `s`, incl. spill-over.
    day_load: Vec<Vec<f64>>,
}

/// Optimal objective by exhaustive enumeration, or `None` if no decision is feasible.
///
/// Enumerates every maintenance plan per turbine (idle, each short-term hour,
/// each combination of long-term days across scenarios), every long-term yaw
/// choice, and every count of short-term hours per yaw level. For fixed counts
/// the best placement of levels over hours is found by a small dynamic program
/// over hours, which is exact because relative-RUL factors do not vary within
/// the short-term day.
pub fn brute_force(config: &MilpConfig, boundaries: &[TurbineBoundary], sc: &ScenarioSet) -> Option<f64> {
    let n_i = sc.n_turbines;
    let n_s = sc.n_scenarios;
    let n_d = sc.n_days;
    assert_eq!(sc.n_levels, 2, "oracle handles two yaw levels");
    let c = &config.costs;
    let ns = n_s as f64;
    let regular = f64::from(config.crews) * config.regular_hours;

    let per_turbine: Vec<Vec<PlanUse>> = (0..n_i).map(|i| turbine_plans(config, &boundaries[i], sc, i)).collect();

    let mut best: Option<f64> = None;
    let mut choice = vec![0usize; n_i];
    loop {
        let uses: Vec<&PlanUse> = (0..n_i).map(|i| &per_turbine[i][choice[i]]).collect();
        let mut value: f64 = uses.iter().map(|u| u.value).sum();
        let mut feasible = value.is_finite();
        // Crew limit and short-term overtime per scenario.
        for s in 0..n_s {
            let mut total = 0.0;
            for t in 0..STH_HOURS {
                let busy = uses.iter().filter(|u| u.crew[t][s]).count();
                if busy as u32 > config.crews {
                    feasible = false;
                }
                total += busy as f64;
            }
            let q = (total - regular).max(0.0);
            if q > config.overtime_cap + 1e-9 {
                feasible = false;
            }
            value -= c.overtime_hourly * q / ns;
        }
        // Vessel for the short-term day.
        if uses.iter().any(|u| matches!(u.plan, Plan::Sth(_))) {
            value -= c.vessel_daily;
        }
        // Long-term work hours, overtime and vessels.
        for d in 0..n_d {
            for s in 0..n_s {
                let load: f64 = uses.iter().map(|u| u.day_load[d][s]).sum();
                let q = (load - regular).max(0.0);
                if q > config.overtime_cap + 1e-9 {
                    feasible = false;
                }
                value -= c.overtime_hourly * q / ns;
                if uses.iter().any(|u| matches!(&u.plan, Plan::Lth(days) if days[s] == d)) {
                    value -= c.vessel_daily / ns;
                }
            }
        }
        if feasible {
            best = Some(best.map_or(value, |b: f64| b.max(value)));
        }
        // Next combination.
        let mut k = 0;
        loop {
            if k == n_i {
                return best;
            }
            choice[k] += 1;
            if choice[k] < per_turbine[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn turbine_plans(config: &MilpConfig, b: &TurbineBoundary, sc: &ScenarioSet, i: usize) -> Vec<PlanUse> {
    let n_s = sc.n_scenarios;
    let n_d = sc.n_days;
    let mut plans = vec![Plan::Idle];
    plans.extend((0..STH_HOURS).map(Plan::Sth));
    let mut days = vec![0usize; n_s];
    loop {
        plans.push(Plan::Lth(days.clone()));
        let mut k = 0;
        while k < n_s {
            days[k] += 1;
            if days[k] < n_d {
                break;
            }
            days[k] = 0;
            k += 1;
        }
        if k == n_s {
            break;
        }
    }
    plans.into_iter().map(|p| evaluate_plan(config, b, sc, i, p)).collect()
}

fn evaluate_plan(config: &MilpConfig, b: &TurbineBoundary, sc: &ScenarioSet, i: usize, plan: Plan) -> PlanUse {
    let n_s = sc.n_scenarios;
    let n_d = sc.n_days;
    let n_t = STH_HOURS;
    let ns = n_s as f64;
    let c = &config.costs;
    let rated = sc.rated_capacity;
    let rho = if b.carried_task { 1.0 } else { 0.0 };
    let repair_weight = (1.0 - rho) * b.criticality;
    let last_light = config.last_light;

    // Short-term occupation, crews and spill-over.
    let mut under = vec![vec![false; n_s]; n_t];
    let mut crew = vec![vec![false; n_s]; n_t];
    let mut spill = vec![0.0; n_s];
    if let Plan::Sth(k) = plan {
        for s in 0..n_s {
            let dur = sc.mission(k, i, s) as usize;
            for t in k..(k + dur).min(n_t) {
                under[t][s] = true;
                crew[t][s] = t + 1 < last_light;
            }
            spill[s] = (dur as f64 - (n_t - k) as f64).max(0.0);
        }
    }
    let mut fixed = 0.0;
    for s in 0..n_s {
        let hours_crewed = (0..n_t).filter(|&t| crew[t][s]).count() as f64;
        fixed -= c.crew_hourly * hours_crewed / ns;
        let y_s = c.interruption_hourly.unwrap_or_else(|| {
            let p = &sc.price[s][..n_t * (1 + n_d)];
            rated * p.iter().sum::<f64>() / p.len() as f64
        });
        let upfront = c.interruption_upfront.unwrap_or(c.vessel_daily);
        if spill[s] > 0.0 {
            fixed -= (upfront + y_s * spill[s]) / ns;
        }
    }
    let mut day_load = vec![vec![0.0; n_s]; n_d];
    for s in 0..n_s {
        day_load[0][s] += spill[s];
        if let Plan::Lth(days) = &plan {
            let d = days[s];
            let dur = f64::from(sc.mission_lth(d, i, s));
            day_load[d][s] += dur;
            fixed -= c.crew_hourly * dur / ns;
        }
    }

    // Best short-term revenue for each status pattern and count pair.
    let restored = |t: usize| matches!(plan, Plan::Sth(k) if k <= t.min(n_t - 2));
    let n_patterns = 1usize << n_s;
    let mut dp_tables = Vec::with_capacity(n_patterns);
    for pattern in 0..n_patterns {
        let alive = |s: usize| pattern >> s & 1 == 1;
        // value[t][j]: revenue of hour t at level j (j = 2 means no level)
        let hour_value = |t: usize, j: usize| -> f64 {
            if j == 2 {
                return 0.0;
            }
            (0..n_s)
                .map(|s| {
                    let avail = !under[t][s] && ((1.0 - rho) * f64::from(u8::from(alive(s))) >= 1.0 || restored(t));
                    if avail {
                        (sc.price(t, s) * rated * sc.power(t, i, j, s)).max(0.0) / ns
                    } else {
                        0.0
                    }
                })
                .sum()
        };
        // dp[a][b]: best revenue with a hours at level 0 and b at level 1 so far.
        let neg = f64::NEG_INFINITY;
        let mut dp = vec![vec![neg; n_t + 1]; n_t + 1];
        dp[0][0] = 0.0;
        for t in 0..n_t {
            let mut next = vec![vec![neg; n_t + 1]; n_t + 1];
            for a in 0..=t {
                for bb in 0..=(t - a) {
                    let v = dp[a][bb];
                    if v == neg {
                        continue;
                    }
                    let mut upd = |na: usize, nb: usize, add: f64| {
                        if v + add > next[na][nb] {
                            next[na][nb] = v + add;
                        }
                    };
                    upd(a, bb, hour_value(t, 2));
                    upd(a + 1, bb, hour_value(t, 0));
                    upd(a, bb + 1, hour_value(t, 1));
                }
            }
            dp = next;
        }
        dp_tables.push(dp);
    }

    // Enumerate long-term yaw choices (3 options per (d, s)) and count pairs.
    let z0 = |s: usize| f64::from(u8::from(sc.rul0(i, s) >= 1.0));
    let z0l = |d: usize, s: usize| f64::from(u8::from(sc.rul0(i, s) >= (d + 1) as f64));
    let cells = n_d * n_s;
    let combos = 3usize.pow(cells as u32);
    let mut best = f64::NEG_INFINITY;
    let mut lam = vec![0.0; n_s];
    let mut zeta = vec![false; n_s];
    let mut zeta_l = vec![vec![false; n_s]; n_d];
    for combo in 0..combos {
        let level = |d: usize, s: usize| (combo / 3usize.pow((d * n_s + s) as u32)) % 3;
        for a in 0..=n_t {
            for bb in 0..=(n_t - a) {
                // RUL at the horizon end.
                let mut ok = true;
                for s in 0..n_s {
                    let used = a as f64 * sc.factor(0, i, 0, s) + bb as f64 * sc.factor(0, i, 1, s);
                    let mut l = sc.rul0(i, s) + z0(s) * (1.0 - used / n_t as f64);
                    for d in 0..n_d {
                        let f = match level(d, s) {
                            2 => 0.0,
                            j => sc.factor_lth(d, i, j, s),
                        };
                        l += z0l(d, s) * (1.0 - f);
                    }
                    if l < 0.0 {
                        ok = false;
                    }
                    lam[s] = l;
                    zeta[s] = l >= 1.0;
                    for d in 0..n_d {
                        zeta_l[d][s] = l >= (d + 1) as f64;
                    }
                }
                if !ok {
                    continue;
                }
                if plan == Plan::Idle && lam.iter().any(|&l| l < config.theta_threshold) {
                    continue;
                }
                let pattern = (0..n_s).filter(|&s| zeta[s]).map(|s| 1usize << s).sum::<usize>();
                let mut v = dp_tables[pattern][a][bb];
                if v == f64::NEG_INFINITY {
                    continue;
                }

                // Dynamic maintenance cost rates.
                let zs = zeta.iter().filter(|&&z| z).count() as f64;
                let rate_sth = (c.preventive * zs + c.corrective * (ns - zs)) / (zs + ns * b.elapsed_days);
                let mut cum = zs;
                let mut rate_lth = vec![0.0; n_d];
                for d in 0..n_d {
                    let zl = zeta_l[d].iter().filter(|&&z| z).count() as f64;
                    cum += zl;
                    rate_lth[d] = (c.preventive * zl + c.corrective * (ns - zl)) / (cum + ns * b.elapsed_days);
                }

                match &plan {
                    Plan::Idle => {}
                    Plan::Sth(_) => v -= repair_weight * rate_sth,
                    Plan::Lth(days) => {
                        for s in 0..n_s {
                            v -= repair_weight * rate_lth[days[s]] / ns;
                        }
                    }
                }

                // Long-term energy.
                for d in 0..n_d {
                    for s in 0..n_s {
                        let j = level(d, s);
                        if j == 2 {
                            continue;
                        }
                        let starts_here = matches!(&plan, Plan::Lth(days) if days[s] == d);
                        let restored = match &plan {
                            Plan::Idle => false,
                            Plan::Sth(_) => true,
                            Plan::Lth(days) => {
                                if d + 1 < n_d {
                                    days[s] <= d
                                } else {
                                    days[s] < d
                                }
                            }
                        };
                        let avail = (1.0 - rho) * f64::from(u8::from(zeta_l[d][s])) >= 1.0 || restored;
                        if !avail {
                            continue;
                        }
                        let fmax = sc.power_lth_max(d, i, s);
                        let busy = if starts_here { f64::from(sc.mission_lth(d, i, s)).min(24.0) } else { 0.0 };
                        let cap = (24.0 * rated * sc.power_lth(d, i, j, s)).min(rated * fmax * (24.0 - busy)).max(0.0);
                        v += (sc.price_daily(d, s) * cap).max(0.0) / ns;
                    }
                }

                // Remaining life valued at the horizon end, net of life given up by maintenance.
                for s in 0..n_s {
                    let l0 = sc.rul0(i, s);
                    let lost = match &plan {
                        Plan::Idle => 0.0,
                        Plan::Sth(_) => l0,
                        Plan::Lth(days) => (l0 - (days[s] + 1) as f64).max(0.0),
                    };
                    v += c.rul_daily * (lam[s] - lost) / ns;
                }
                best = best.max(v);
            }
        }
    }

    PlanUse { plan, value: best + fixed, crew, day_load }
}

pub fn default_costs() -> Costs {
    Costs::default()
}

/// A small but fully derived decision problem: generated weather, nominal RUL
/// beliefs, and the same derivation chain the simulator uses.
pub struct PolicyFixture {
    pub config: farmopt::config::RunConfig,
    pub model: farmopt::config::FarmModel,
    pub boundaries: Vec<TurbineBoundary>,
    pub outlooks: Vec<farmopt::scenario::TurbineOutlook>,
    pub scenarios: ScenarioSet,
}

/// Acceptance-scale load calibration: yawing away from 0 degrees relieves
/// load on the negative side and the wind dependence is mild.
pub fn calibrated_config() -> farmopt::config::RunConfig {
    let mut cfg = farmopt::config::RunConfig::default();
    cfg.yaw.levels = 3;
    cfg.load.synthetic.wind_exponent = 0.15;
    cfg.load.synthetic.yaw_linear = 0.02;
    cfg
}

impl PolicyFixture {
    pub fn new(seed: u64, turbines: usize, days: usize, scenarios: usize) -> Self {
        use farmopt::degradation::RulDistribution;
        use farmopt::scenario::{derive_parameters, generate, TurbineOutlook};

        let mut config = calibrated_config();
        config.campaign.turbines = turbines;
        config.campaign.horizon_days = days;
        config.campaign.scenarios = scenarios;
        config.optimizer.mip_gap = 1e-6;
        config.optimizer.time_limit_secs = 60.0;
        let model = config.farm_model().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let outlooks: Vec<TurbineOutlook> = (0..turbines)
            .map(|_| {
                let mean = rng.random_range(1.0..25.0);
                TurbineOutlook { rul: RulDistribution { mean, shape: mean * rng.random_range(20.0..200.0) }, failed: false, carried_hours: 0 }
            })
            .collect();
        let boundaries = (0..turbines)
            .map(|_| TurbineBoundary::healthy(rng.random_range(1.0..40.0)))
            .collect();
        let paths = generate(&config.weather, STH_HOURS * (1 + days), scenarios, seed, None).unwrap();
        let scenarios = {
            let ctx = Self::context(&config, &model);
            derive_parameters(&paths, days, &ctx, &outlooks, seed).unwrap()
        };
        Self { config, model, boundaries, outlooks, scenarios }
    }

    fn context<'a>(config: &'a farmopt::config::RunConfig, model: &'a farmopt::config::FarmModel) -> farmopt::scenario::DeriveContext<'a> {
        farmopt::scenario::DeriveContext { power: &model.power, grid: &model.grid, table: &model.table, access: &config.access }
    }

    pub fn ctx(&self) -> farmopt::scenario::DeriveContext<'_> {
        Self::context(&self.config, &self.model)
    }

    pub fn input<'a>(&'a self, ctx: &'a farmopt::scenario::DeriveContext<'a>) -> farmopt::policies::DecisionInput<'a> {
        farmopt::policies::DecisionInput {
            config: &self.config.optimizer,
            boundaries: &self.boundaries,
            scenarios: &self.scenarios,
            derive: ctx,
            outlooks: &self.outlooks,
        }
    }
}

/// Solve POSYDON and STOCHOS on the same fixture. Returns both objectives and
/// the slack allowed by their reported gaps.
pub fn restriction_pair(seed: u64) -> (f64, f64, f64) {
    use farmopt::policies::{decide, Policy, PolicyKind};
    let fx = PolicyFixture::new(seed, 2, 2, 3);
    let ctx = fx.ctx();
    let input = fx.input(&ctx);
    let run = |kind| decide(&Policy::new(kind, 60.0).unwrap(), &input, &HighsBackend).unwrap();
    let full = run(PolicyKind::Posydon);
    let restricted = run(PolicyKind::Stochos);
    assert!(full.status.has_solution() && restricted.status.has_solution());
    let gap = full.gap.unwrap_or(fx.config.optimizer.mip_gap) + restricted.gap.unwrap_or(fx.config.optimizer.mip_gap);
    let slack = gap * full.objective.abs().max(restricted.objective.abs()) + 1e-6;
    (full.objective, restricted.objective, slack)
}
