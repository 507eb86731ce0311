//! Closed-loop rolling-horizon simulation of one policy against one truth.

use rand::Rng;

use super::record::{BeliefSummary, DailyCost, OmMetrics, RollRecord, TaskKind, TaskStart, TurbineHour};
use super::truth::{daily_shocks, TruthBlade, TruthWeather};
use super::HarnessError;
use crate::config::{FarmModel, RunConfig};
use crate::degradation::{
    first_passage_params, nominal_rul, relative_rul_factor, update_posterior, DegradationError, DegradationState,
    RulDistribution, HOURS_PER_DAY,
};
use crate::milp::{MilpBackend, MilpInstance, MilpSolution, SolveStatus, TurbineBoundary};
use crate::policies::{build_instance, decide, DecisionInput, Policy, PolicyKind};
use crate::rng::{keyed_rng, tag};
use crate::scenario::{accessible, derive_parameters, generate, DeriveContext, ScenarioSet, TurbineOutlook, STH_HOURS};

#[derive(Debug, Clone, Copy, PartialEq)]
struct OpenTask {
    kind: TaskKind,
    remaining_hours: u32,
    started: (usize, usize),
}

#[derive(Debug, Clone)]
struct TurbineSim {
    blade: TruthBlade,
    belief: DegradationState,
    task: Option<OpenTask>,
    /// Calendar hours since the last renewal.
    elapsed_hours: f64,
}

/// What a policy is shown at the start of a roll.
#[derive(Debug, Clone)]
pub struct RollInputs {
    pub boundaries: Vec<TurbineBoundary>,
    pub outlooks: Vec<TurbineOutlook>,
    pub scenarios: ScenarioSet,
}

/// Result of a finished campaign.
#[derive(Debug, Clone)]
pub struct CampaignOutcome {
    pub metrics: OmMetrics,
    pub records: Vec<RollRecord>,
}

/// A campaign in progress. Rolls are executed one at a time with [`Campaign::step`].
#[derive(Debug, Clone)]
pub struct Campaign {
    cfg: RunConfig,
    model: FarmModel,
    policy: Policy,
    seed: u64,
    rolls: usize,
    truth: TruthWeather,
    turbines: Vec<TurbineSim>,
    roll: usize,
    records: Vec<RollRecord>,
}

fn belief_rul(belief: &DegradationState) -> Result<RulDistribution, DegradationError> {
    match nominal_rul(belief) {
        Err(DegradationError::AlreadyFailed { .. }) => Ok(RulDistribution::point_mass_at_zero()),
        // A noisy posterior can lose its drift; fall back to the population drift.
        Err(DegradationError::NonPositiveDrift(_)) => {
            let gap = belief.failure_threshold - belief.observed_amplitude;
            let (mean, shape) = first_passage_params(gap, belief.prior.mean_beta, belief.posterior.sigma);
            Ok(RulDistribution { mean: mean / HOURS_PER_DAY, shape: shape / HOURS_PER_DAY })
        }
        other => other,
    }
}

impl Campaign {
    /// Set up the fleet and the truth weather for `rolls` days.
    pub fn new(cfg: &RunConfig, kind: PolicyKind, seed: u64, rolls: usize) -> Result<Self, HarnessError> {
        cfg.validate()?;
        if rolls == 0 {
            return Err(HarnessError::Input("a campaign needs at least one roll".into()));
        }
        let model = cfg.farm_model()?;
        let d = &cfg.degradation;
        let turbines = (0..cfg.campaign.turbines)
            .map(|i| {
                let (blade, age_days) =
                    TruthBlade::initial(&d.prior, d.failure_threshold, d.initial_age_days, seed, i);
                let mut belief = DegradationState::new(d.prior, d.failure_threshold)?;
                if blade.age_hours > 0.0 {
                    belief = update_posterior(&belief, (blade.age_hours, blade.amplitude))?;
                }
                Ok(TurbineSim { blade, belief, task: None, elapsed_hours: age_days * HOURS_PER_DAY })
            })
            .collect::<Result<Vec<_>, DegradationError>>()?;
        Ok(Self {
            cfg: cfg.clone(),
            model,
            policy: cfg.policy(kind),
            seed,
            rolls,
            truth: TruthWeather::simulate(&cfg.weather, rolls, seed),
            turbines,
            roll: 0,
            records: Vec::with_capacity(rolls),
        })
    }

    pub fn roll(&self) -> usize {
        self.roll
    }

    pub fn is_finished(&self) -> bool {
        self.roll >= self.rolls
    }

    pub fn truth(&self) -> &TruthWeather {
        &self.truth
    }

    pub fn model(&self) -> &FarmModel {
        &self.model
    }

    pub fn records(&self) -> &[RollRecord] {
        &self.records
    }

    /// Current belief about turbine `i`.
    pub fn belief(&self, i: usize) -> &DegradationState {
        &self.turbines[i].belief
    }

    /// Current true blade of turbine `i`.
    pub fn blade(&self, i: usize) -> &TruthBlade {
        &self.turbines[i].blade
    }

    fn derive_context(&self) -> DeriveContext<'_> {
        DeriveContext {
            power: &self.model.power,
            grid: &self.model.grid,
            table: &self.model.table,
            access: &self.cfg.access,
        }
    }

    /// Boundaries, outlooks and scenarios for the current roll.
    pub fn inputs(&self) -> Result<RollInputs, HarnessError> {
        let mut boundaries = Vec::with_capacity(self.turbines.len());
        let mut outlooks = Vec::with_capacity(self.turbines.len());
        for t in &self.turbines {
            let carried_hours = t.task.map_or(0, |k| k.remaining_hours);
            boundaries.push(TurbineBoundary {
                carried_task: t.task.is_some(),
                carried_hours,
                criticality: self.cfg.campaign.criticality,
                // The optimizer needs a positive elapsed life; a turbine
                // renewed this midnight counts as one hour old.
                elapsed_days: (t.elapsed_hours / HOURS_PER_DAY).max(1.0 / HOURS_PER_DAY),
                days_since_maintenance: t.elapsed_hours / HOURS_PER_DAY,
                failed: t.blade.failed,
            });
            let rul = if t.blade.failed { RulDistribution::point_mass_at_zero() } else { belief_rul(&t.belief)? };
            outlooks.push(TurbineOutlook { rul, failed: t.blade.failed, carried_hours });
        }
        let c = &self.cfg.campaign;
        let roll_seed = keyed_rng(self.seed, &[tag::SCENARIO_WEATHER, u64::MAX, self.roll as u64]).next_u64();
        let hours = STH_HOURS * (1 + c.horizon_days);
        let paths = generate(&self.cfg.weather, hours, c.scenarios, roll_seed, Some(self.truth.midnight[self.roll]))?;
        let scenarios = derive_parameters(&paths, c.horizon_days, &self.derive_context(), &outlooks, roll_seed)?;
        Ok(RollInputs { boundaries, outlooks, scenarios })
    }

    /// The optimization model the policy would solve at the current roll.
    pub fn instance(&self) -> Result<Option<MilpInstance>, HarnessError> {
        if self.is_finished() {
            return Err(HarnessError::Input(format!("campaign has only {} rolls", self.rolls)));
        }
        let inputs = self.inputs()?;
        let ctx = self.derive_context();
        let input = DecisionInput {
            config: &self.cfg.optimizer,
            boundaries: &inputs.boundaries,
            scenarios: &inputs.scenarios,
            derive: &ctx,
            outlooks: &inputs.outlooks,
        };
        Ok(build_instance(&self.policy, &input)?)
    }

    /// Decide and execute the current roll.
    pub fn step(&mut self, backend: &dyn MilpBackend) -> Result<&RollRecord, HarnessError> {
        if self.is_finished() {
            return Err(HarnessError::Input(format!("campaign has only {} rolls", self.rolls)));
        }
        let inputs = self.inputs()?;
        let ctx = self.derive_context();
        let input = DecisionInput {
            config: &self.cfg.optimizer,
            boundaries: &inputs.boundaries,
            scenarios: &inputs.scenarios,
            derive: &ctx,
            outlooks: &inputs.outlooks,
        };
        let (solution, degraded) = match decide(&self.policy, &input, backend) {
            Ok(s) if s.status.has_solution() => (s, false),
            Ok(s) => {
                log::warn!("roll {}: solver returned {:?}; running the fallback day", self.roll, s.status);
                (self.fallback(s.status, s.message.clone()), true)
            }
            Err(e) => {
                log::warn!("roll {}: {e}; running the fallback day", self.roll);
                (self.fallback(SolveStatus::Error, Some(e.to_string())), true)
            }
        };
        let belief = self
            .turbines
            .iter()
            .zip(&inputs.outlooks)
            .zip(&inputs.boundaries)
            .map(|((t, o), b)| BeliefSummary {
                rul_mean_days: (!o.rul.is_degenerate()).then_some(o.rul.mean),
                observed_amplitude: t.belief.observed_amplitude,
                failed: o.failed,
                carried_hours: o.carried_hours,
                elapsed_days: b.elapsed_days,
            })
            .collect();
        let record = self.execute(&solution, degraded, belief)?;
        log::info!(
            "{} seed {} roll {}: {:?} gap {} objective {} starts {} failures {} cost {:.0}",
            self.policy.kind,
            self.seed,
            record.roll,
            record.status,
            record.gap.map_or("-".into(), |g| format!("{g:.2e}")),
            record.objective.map_or("-".into(), |o| format!("{o:.0}")),
            record.starts.len(),
            record.failures.len(),
            record.cost.total(),
        );
        self.records.push(record);
        self.roll += 1;
        Ok(self.records.last().expect("just pushed"))
    }

    /// No maintenance and every turbine at 0 degrees yaw.
    fn fallback(&self, status: SolveStatus, message: Option<String>) -> MilpSolution {
        let n = self.turbines.len();
        MilpSolution {
            status,
            backend: "fallback".into(),
            objective: f64::NAN,
            breakdown: Default::default(),
            gap: None,
            sth_maintenance: vec![vec![false; n]; STH_HOURS],
            sth_yaw: vec![vec![Some(self.model.grid.zero_index()); n]; STH_HOURS],
            lth_maintenance: Vec::new(),
            lth_yaw: Vec::new(),
            values: Vec::new(),
            message,
        }
    }

    /// Play the short-term block of `solution` against the truth.
    fn execute(
        &mut self,
        solution: &MilpSolution,
        degraded: bool,
        belief: Vec<BeliefSummary>,
    ) -> Result<RollRecord, HarnessError> {
        let d = self.roll;
        let n = self.turbines.len();
        let costs = self.cfg.optimizer.costs;
        let access = self.cfg.access;
        let threshold = self.cfg.degradation.failure_threshold;
        let rated = self.model.power.rated_capacity();
        let crews = self.cfg.optimizer.crews as usize;
        let regular = f64::from(self.cfg.optimizer.crews) * self.cfg.optimizer.regular_hours;
        let crew_cap = regular + self.cfg.optimizer.overtime_cap;
        let shocks: Vec<_> = (0..n).map(|i| daily_shocks(self.seed, i, d)).collect();

        let mut rec = RollRecord {
            policy: self.policy.kind,
            seed: self.seed,
            roll: d,
            status: solution.status,
            gap: solution.gap,
            objective: solution.objective.is_finite().then_some(solution.objective),
            degraded,
            belief,
            maintenance: solution.sth_maintenance.clone(),
            yaw: solution.sth_yaw.clone(),
            wind: Vec::with_capacity(STH_HOURS),
            wave: Vec::with_capacity(STH_HOURS),
            price: Vec::with_capacity(STH_HOURS),
            power_mw: Vec::with_capacity(STH_HOURS),
            starts: Vec::new(),
            completions: Vec::new(),
            failures: Vec::new(),
            crew_hours: 0.0,
            overtime_hours: 0.0,
            vessel: false,
            downtime_hours: 0,
            access_downtime_hours: 0,
            production_mwh: 0.0,
            baseline_mwh: 0.0,
            revenue: 0.0,
            baseline_revenue: 0.0,
            cost: DailyCost::default(),
        };

        for h in 0..STH_HOURS {
            let (wind, wave, price) = self.truth.at(d, h);
            rec.wind.push(wind);
            rec.wave.push(wave);
            rec.price.push(price);

            for (i, t) in self.turbines.iter_mut().enumerate() {
                if solution.sth_maintenance[h][i] && t.task.is_none() {
                    let kind = if t.blade.failed { TaskKind::Corrective } else { TaskKind::Preventive };
                    let (hours, price_of_task) = match kind {
                        TaskKind::Preventive => (access.preventive_hours, costs.preventive),
                        TaskKind::Corrective => (access.corrective_hours, costs.corrective),
                    };
                    rec.cost.repair += price_of_task;
                    rec.starts.push(TaskStart {
                        turbine: i,
                        hour: h,
                        kind,
                        lost_life_days: (kind == TaskKind::Preventive)
                            .then(|| t.blade.expected_remaining_days(threshold)),
                    });
                    t.task = Some(OpenTask { kind, remaining_hours: hours, started: (d, h) });
                }
            }

            // Crews go to the oldest open tasks first.
            let mut worked = vec![false; n];
            if accessible(&access, wind, wave, h) {
                let mut open: Vec<(usize, usize, usize)> = self
                    .turbines
                    .iter()
                    .enumerate()
                    .filter_map(|(i, t)| t.task.map(|k| (k.started.0, k.started.1, i)))
                    .collect();
                open.sort_unstable();
                for &(_, _, i) in open.iter().take(crews) {
                    if rec.crew_hours + 1.0 > crew_cap {
                        break;
                    }
                    rec.crew_hours += 1.0;
                    worked[i] = true;
                }
            }
            let weather_blocked = !(wind < access.wind_max && wave < access.wave_max);

            let full = rated * self.model.power.scaled_power(wind, 0.0);
            let mut row = vec![0.0; n];
            for (i, t) in self.turbines.iter_mut().enumerate() {
                rec.baseline_mwh += full;
                rec.baseline_revenue += price * full;
                t.elapsed_hours += 1.0;
                if let Some(task) = t.task.as_mut() {
                    rec.downtime_hours += 1;
                    if weather_blocked {
                        rec.access_downtime_hours += 1;
                    }
                    if worked[i] {
                        task.remaining_hours -= 1;
                        if task.remaining_hours == 0 {
                            let cycle = t.blade.cycle + 1;
                            let d = &self.cfg.degradation;
                            t.blade = TruthBlade::draw(&d.prior, d.failure_threshold, self.seed, i, cycle);
                            t.belief = t.belief.renewed();
                            t.task = None;
                            t.elapsed_hours = 0.0;
                            rec.completions.push(TurbineHour { turbine: i, hour: h });
                        }
                    }
                    continue;
                }
                if t.blade.failed {
                    rec.downtime_hours += 1;
                    continue;
                }
                let Some(j) = solution.sth_yaw[h][i] else { continue };
                let p = rated * self.model.power.scaled_power(wind, self.model.grid.levels[j]);
                row[i] = p;
                rec.production_mwh += p;
                rec.revenue += price * p;
                let factor = relative_rul_factor(&self.model.table, self.model.table_rows[j], wind)?.factor;
                if t.blade.advance(factor, shocks[i][h], threshold) {
                    rec.failures.push(TurbineHour { turbine: i, hour: h });
                }
            }
            rec.power_mw.push(row);
        }

        rec.overtime_hours = (rec.crew_hours - regular).max(0.0);
        rec.vessel = rec.crew_hours > 0.0;
        rec.cost.crew = costs.crew_hourly * rec.crew_hours;
        rec.cost.overtime = costs.overtime_hourly * rec.overtime_hours;
        rec.cost.vessel = if rec.vessel { costs.vessel_daily } else { 0.0 };
        rec.cost.revenue_loss = rec.baseline_revenue - rec.revenue;

        // End-of-day condition monitoring.
        for t in &mut self.turbines {
            if t.blade.age_hours > t.belief.observation_time {
                t.belief = update_posterior(&t.belief, (t.blade.age_hours, t.blade.amplitude))?;
            }
        }
        Ok(rec)
    }

    pub fn finish(self) -> CampaignOutcome {
        let metrics = OmMetrics::from_records(self.policy.kind, self.seed, &self.records);
        CampaignOutcome { metrics, records: self.records }
    }
}

/// Run `policy` for the configured number of rolls against truth `seed`.
pub fn run_campaign(
    cfg: &RunConfig,
    policy: PolicyKind,
    seed: u64,
    backend: &dyn MilpBackend,
) -> Result<CampaignOutcome, HarnessError> {
    let mut c = Campaign::new(cfg, policy, seed, cfg.campaign.rolls)?;
    while !c.is_finished() {
        c.step(backend)?;
    }
    Ok(c.finish())
}

/// Every configured policy against every configured truth seed, seed-major.
pub fn compare_policies(cfg: &RunConfig, backend: &dyn MilpBackend) -> Result<Vec<CampaignOutcome>, HarnessError> {
    let mut out = Vec::new();
    for &seed in &cfg.campaign.truth_seeds {
        for &kind in &cfg.policies {
            out.push(run_campaign(cfg, kind, seed, backend)?);
        }
    }
    Ok(out)
}
