use std::collections::BTreeMap;

use serde::Serialize;

use super::build::MilpInstance;
use super::solution::{MilpSolution, ObjectiveBreakdown};

/// Rows whose relative residual exceeds this are reported as violated.
pub const ROW_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ViolatedRow {
    pub row: usize,
    pub family: &'static str,
    pub violation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    /// Largest relative residual per constraint family (every family present).
    pub max_violation: BTreeMap<&'static str, f64>,
    pub violated: Vec<ViolatedRow>,
    /// Largest bound violation over all columns.
    pub bound_violation: f64,
    /// Largest distance of an integer column from the nearest integer.
    pub integrality_violation: f64,
    /// Objective terms recomputed from the instance data.
    pub recomputed: ObjectiveBreakdown,
    pub solver_objective: f64,
    /// `|recomputed - solver| / max(1, |solver|)`.
    pub objective_mismatch: f64,
}

impl VerifyReport {
    pub fn is_clean(&self) -> bool {
        self.violated.is_empty()
            && self.bound_violation <= ROW_TOLERANCE
            && self.integrality_violation <= ROW_TOLERANCE
            && self.objective_mismatch <= ROW_TOLERANCE
    }

    pub fn violated_families(&self) -> Vec<&'static str> {
        let mut f: Vec<_> = self.violated.iter().map(|v| v.family).collect();
        f.dedup();
        f
    }
}

/// Re-evaluate every ledger row at the solution and recompute the objective
/// terms from scenario data and costs.
pub fn verify_solution(instance: &MilpInstance, solution: &MilpSolution) -> VerifyReport {
    let x = &solution.values;
    assert_eq!(x.len(), instance.num_vars(), "solution does not belong to this instance");

    let mut max_violation = BTreeMap::new();
    let mut violated = Vec::new();
    for (k, row) in instance.rows.iter().enumerate() {
        let v = row.relative_violation(x);
        let e = max_violation.entry(row.family.tag()).or_insert(0.0f64);
        *e = e.max(v);
        if v > ROW_TOLERANCE {
            violated.push(ViolatedRow { row: k, family: row.family.tag(), violation: v });
        }
    }
    let mut bound_violation = 0.0f64;
    let mut integrality_violation = 0.0f64;
    for (var, &val) in instance.variables.iter().zip(x) {
        bound_violation = bound_violation.max(var.lower - val).max(val - var.upper);
        if var.kind.is_integral() {
            integrality_violation = integrality_violation.max((val - val.round()).abs());
        }
    }

    let recomputed = recompute_objective(instance, x);
    let solver_objective = solution.objective;
    let objective_mismatch = (recomputed.total() - solver_objective).abs() / solver_objective.abs().max(1.0);
    VerifyReport {
        max_violation,
        violated,
        bound_violation,
        integrality_violation,
        recomputed,
        solver_objective,
        objective_mismatch,
    }
}

fn recompute_objective(instance: &MilpInstance, x: &[f64]) -> ObjectiveBreakdown {
    let n = instance.dims();
    let l = &instance.layout;
    let sc = &instance.scenarios;
    let c = &instance.config.costs;
    let ns = n.scenarios as f64;
    let rated = sc.rated_capacity;
    let upfront = c.interruption_upfront.unwrap_or(c.vessel_daily);

    let mut short = 0.0;
    let mut long = 0.0;
    let mut interruptions = 0.0;
    let mut end = 0.0;
    for s in 0..n.scenarios {
        let y_s = c.interruption_hourly.unwrap_or_else(|| {
            let p = &sc.price[s][..n.hours * (1 + n.days)];
            rated * p.iter().sum::<f64>() / p.len() as f64
        });
        let mut sth = -c.overtime_hourly * x[l.overtime(s)];
        let mut lth = 0.0;
        for i in 0..n.turbines {
            let repair_weight = if instance.boundaries[i].carried_task { 0.0 } else { instance.boundaries[i].criticality };
            for t in 0..n.hours {
                sth += sc.price(t, s) * x[l.power(t, i, s)] - c.crew_hourly * x[l.crew(t, i, s)];
            }
            for d in 0..n.days {
                lth += sc.price_daily(d, s) * x[l.power_lth(d, i, s)]
                    - c.crew_hourly * f64::from(sc.mission_lth(d, i, s)) * x[l.maint_lth(d, i, s)]
                    - repair_weight * x[l.repair_cost_lth(d, i, s)];
            }
            interruptions -= upfront * x[l.interrupted(i, s)] + y_s * x[l.backlog(i, s)];

            let l0 = sc.rul0(i, s);
            let mut lost = 0.0;
            for t in 0..n.hours {
                lost += l0 * x[l.maint(t, i)];
            }
            for d in 0..n.days {
                lost += (l0 - (d + 1) as f64).max(0.0) * x[l.maint_lth(d, i, s)];
            }
            end += c.rul_daily * (x[l.rul(i, s)] - lost);
        }
        for d in 0..n.days {
            lth -= c.overtime_hourly * x[l.overtime_lth(d, s)] + c.vessel_daily * x[l.vessel_lth(d, s)];
        }
        short += sth / ns;
        long += lth / ns;
    }
    for i in 0..n.turbines {
        let repair_weight = if instance.boundaries[i].carried_task { 0.0 } else { instance.boundaries[i].criticality };
        for t in 0..n.hours {
            short -= repair_weight * x[l.repair_cost(t, i)];
        }
    }
    short -= c.vessel_daily * x[l.vessel()];
    ObjectiveBreakdown {
        short_term_profit: short,
        long_term_profit: long,
        prolonged_interruptions: interruptions / ns,
        end_of_horizon: end / ns,
    }
}
