use std::num::NonZeroU32;

use highs::{HighsModelStatus, HighsSolutionStatus, RowProblem, Sense as HighsSense};
use serde::{Deserialize, Serialize};

use super::build::MilpInstance;
use super::ledger::{Row, Sense, Variable};
use super::solution::MilpSolution;
use super::MilpError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    OptimalWithinGap,
    TimeLimitFeasible,
    Infeasible,
    Error,
}

impl SolveStatus {
    pub fn has_solution(self) -> bool {
        matches!(self, SolveStatus::OptimalWithinGap | SolveStatus::TimeLimitFeasible)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveLimits {
    pub mip_gap: f64,
    pub time_limit_secs: f64,
}

/// A model as seen by a backend: the ledger plus optional bound overrides.
#[derive(Debug, Clone, Copy)]
pub struct ModelView<'a> {
    pub variables: &'a [Variable],
    pub rows: &'a [Row],
    /// Replaces the ledger bounds when present.
    pub bounds: Option<&'a [(f64, f64)]>,
    /// Solve the continuous relaxation.
    pub relax_integrality: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BackendOutcome {
    pub status: SolveStatus,
    pub values: Option<Vec<f64>>,
    pub objective: f64,
    pub gap: Option<f64>,
    pub message: Option<String>,
}

/// Anything that can maximise a mixed-integer linear program.
pub trait MilpBackend {
    fn name(&self) -> &str;
    fn solve(&self, model: &ModelView<'_>, limits: &SolveLimits) -> BackendOutcome;
}

/// HiGHS through its C API, single-threaded and quiet.
#[derive(Debug, Clone, Copy, Default)]
pub struct HighsBackend;

impl MilpBackend for HighsBackend {
    fn name(&self) -> &str {
        "highs"
    }

    fn solve(&self, model: &ModelView<'_>, limits: &SolveLimits) -> BackendOutcome {
        let mut pb = RowProblem::default();
        let mut cols = Vec::with_capacity(model.variables.len());
        for (k, v) in model.variables.iter().enumerate() {
            let (lo, hi) = model.bounds.map_or((v.lower, v.upper), |b| b[k]);
            let integer = v.kind.is_integral() && !model.relax_integrality;
            cols.push(pb.add_column_with_integrality(v.cost(), lo..=hi, integer));
        }
        for r in model.rows {
            let terms = r.terms.iter().map(|&(v, a)| (cols[v], a));
            match r.sense {
                Sense::Le => pb.add_row(..=r.rhs, terms),
                Sense::Ge => pb.add_row(r.rhs.., terms),
                Sense::Eq => pb.add_row(r.rhs..=r.rhs, terms),
            }
        }
        let mut m = match pb.try_optimise(HighsSense::Maximise) {
            Ok(m) => m,
            Err(e) => return failure(format!("HiGHS rejected the model: {e:?}")),
        };
        m.make_quiet();
        m.set_threads(NonZeroU32::MIN);
        m.set_option("mip_rel_gap", limits.mip_gap);
        m.set_option("time_limit", limits.time_limit_secs);
        let solved = match m.try_solve() {
            Ok(s) => s,
            Err(e) => return failure(format!("HiGHS run failed: {e:?}")),
        };
        let has_primal = solved.primal_solution_status() == HighsSolutionStatus::Feasible;
        let status = match solved.status() {
            HighsModelStatus::Optimal => SolveStatus::OptimalWithinGap,
            HighsModelStatus::ModelEmpty => SolveStatus::OptimalWithinGap,
            HighsModelStatus::Infeasible => SolveStatus::Infeasible,
            HighsModelStatus::ReachedTimeLimit if has_primal => SolveStatus::TimeLimitFeasible,
            other => return failure(format!("HiGHS finished with status {other:?}")),
        };
        if status == SolveStatus::Infeasible {
            return BackendOutcome { status, values: None, objective: f64::NAN, gap: None, message: None };
        }
        let gap = solved.mip_gap();
        BackendOutcome {
            status,
            values: Some(solved.get_solution().columns().to_vec()),
            objective: solved.objective_value(),
            gap: gap.is_finite().then_some(gap),
            message: None,
        }
    }
}

fn failure(message: String) -> BackendOutcome {
    BackendOutcome {
        status: SolveStatus::Error,
        values: None,
        objective: f64::NAN,
        gap: None,
        message: Some(message),
    }
}

/// Look a backend up by its configured name.
pub fn backend_by_name(name: &str) -> Result<Box<dyn MilpBackend>, MilpError> {
    match name {
        "highs" => Ok(Box::new(HighsBackend)),
        other => Err(MilpError::UnsupportedBackend(other.to_string())),
    }
}

/// Solve `instance` and extract typed decisions.
///
/// After the MIP solve every integer variable is rounded and fixed, and the
/// remaining LP is re-solved, so continuous values satisfy the rows to LP
/// precision rather than to the MIP integrality tolerance.
pub fn solve(instance: &MilpInstance, backend: &dyn MilpBackend) -> MilpSolution {
    let limits = SolveLimits {
        mip_gap: instance.config.mip_gap,
        time_limit_secs: instance.config.time_limit_secs,
    };
    let view = ModelView {
        variables: &instance.variables,
        rows: &instance.rows,
        bounds: None,
        relax_integrality: false,
    };
    let outcome = backend.solve(&view, &limits);
    let Some(raw) = outcome.values.filter(|_| outcome.status.has_solution()) else {
        return MilpSolution::without_decisions(instance, outcome.status, backend.name(), outcome.message);
    };

    let mut values = raw;
    let bounds: Vec<(f64, f64)> = instance
        .variables
        .iter()
        .zip(&values)
        .map(|(v, &x)| {
            if v.kind.is_integral() {
                let r = x.round().clamp(v.lower, v.upper);
                (r, r)
            } else {
                (v.lower, v.upper)
            }
        })
        .collect();
    let polish = backend.solve(
        &ModelView {
            variables: &instance.variables,
            rows: &instance.rows,
            bounds: Some(&bounds),
            relax_integrality: true,
        },
        &limits,
    );
    let mut message = outcome.message;
    match polish.values {
        Some(v) if polish.status == SolveStatus::OptimalWithinGap => values = v,
        _ => {
            log::warn!("polishing LP failed ({:?}); keeping rounded MIP values", polish.status);
            for (x, &(lo, hi)) in values.iter_mut().zip(&bounds) {
                if lo == hi {
                    *x = lo;
                }
            }
            message = Some("polishing LP failed; continuous values from the MIP".into());
        }
    }
    for (x, v) in values.iter_mut().zip(&instance.variables) {
        if v.kind.is_integral() {
            *x = x.round();
        }
    }
    MilpSolution::from_values(instance, values, outcome.status, outcome.gap, backend.name(), message)
}
