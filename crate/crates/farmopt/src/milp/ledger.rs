use serde::Serialize;

/// Variable families of the two-horizon model. The symbol doubles as the
/// name prefix in LP exports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum VarFamily {
    /// `gamma[t,i,j]`: yaw level in hour t (here-and-now).
    Yaw,
    /// `gammaL[d,i,j,s]`.
    YawLth,
    /// `m[t,i]`: maintenance starts at hour t (here-and-now).
    Maint,
    /// `mL[d,i,s]`.
    MaintLth,
    /// `lambda[i,s]`: RUL at the horizon end.
    Rul,
    /// `zeta[i,s]`: operational over the short-term day.
    Status,
    /// `zetaL[d,i,s]`.
    StatusLth,
    /// `theta[i]`: maintenance is mandatory.
    Trigger,
    /// `u[t,i,s]`: under maintenance.
    UnderMaint,
    /// `x[t,i,s]`: crew occupied.
    Crew,
    /// `y[t,i,s]`: available for production.
    Avail,
    /// `p[t,i,s]`: power output.
    Power,
    /// `q[s]`: short-term overtime hours.
    Overtime,
    /// `qL[d,s]`.
    OvertimeLth,
    /// `r`: vessel rented for the short-term day.
    Vessel,
    /// `rL[d,s]`.
    VesselLth,
    /// `b[i,s]`: hours of a short-term task spilling into day 1.
    Backlog,
    /// `w[i,s]`: a short-term task is interrupted.
    Interrupted,
    /// `yL[d,i,s]`.
    AvailLth,
    /// `pL[d,i,s]`: daily energy.
    PowerLth,
    /// `am[t,i] = c[i] * m[t,i]`.
    RepairCost,
    /// `amL[d,i,s] = cL[d,i] * mL[d,i,s]`.
    RepairCostLth,
    /// `c[i]`: dynamic maintenance cost rate for a short-term start.
    Dmc,
    /// `cL[d,i]`.
    DmcLth,
    /// `ac[i,s] = c[i] * zeta[i,s]`.
    DmcStatus,
    /// `acL0[d,i,s] = cL[d,i] * zeta[i,s]`.
    DmcStatusLthBase,
    /// `acL[e,d,i,s] = cL[d,i] * zetaL[e,i,s]`, e <= d.
    DmcStatusLth,
}

impl VarFamily {
    pub const ALL: [VarFamily; 27] = [
        VarFamily::Yaw,
        VarFamily::YawLth,
        VarFamily::Maint,
        VarFamily::MaintLth,
        VarFamily::Rul,
        VarFamily::Status,
        VarFamily::StatusLth,
        VarFamily::Trigger,
        VarFamily::UnderMaint,
        VarFamily::Crew,
        VarFamily::Avail,
        VarFamily::Power,
        VarFamily::Overtime,
        VarFamily::OvertimeLth,
        VarFamily::Vessel,
        VarFamily::VesselLth,
        VarFamily::Backlog,
        VarFamily::Interrupted,
        VarFamily::AvailLth,
        VarFamily::PowerLth,
        VarFamily::RepairCost,
        VarFamily::RepairCostLth,
        VarFamily::Dmc,
        VarFamily::DmcLth,
        VarFamily::DmcStatus,
        VarFamily::DmcStatusLthBase,
        VarFamily::DmcStatusLth,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            VarFamily::Yaw => "gamma",
            VarFamily::YawLth => "gammaL",
            VarFamily::Maint => "m",
            VarFamily::MaintLth => "mL",
            VarFamily::Rul => "lambda",
            VarFamily::Status => "zeta",
            VarFamily::StatusLth => "zetaL",
            VarFamily::Trigger => "theta",
            VarFamily::UnderMaint => "u",
            VarFamily::Crew => "x",
            VarFamily::Avail => "y",
            VarFamily::Power => "p",
            VarFamily::Overtime => "q",
            VarFamily::OvertimeLth => "qL",
            VarFamily::Vessel => "r",
            VarFamily::VesselLth => "rL",
            VarFamily::Backlog => "b",
            VarFamily::Interrupted => "w",
            VarFamily::AvailLth => "yL",
            VarFamily::PowerLth => "pL",
            VarFamily::RepairCost => "am",
            VarFamily::RepairCostLth => "amL",
            VarFamily::Dmc => "c",
            VarFamily::DmcLth => "cL",
            VarFamily::DmcStatus => "ac",
            VarFamily::DmcStatusLthBase => "acL0",
            VarFamily::DmcStatusLth => "acL",
        }
    }
}

/// Constraint families. Each row of the ledger carries one of these tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowFamily {
    YawChoiceSth,
    YawChoiceLth,
    RulEmbedding,
    StatusSthLower,
    StatusSthUpper,
    StatusLthLower,
    StatusLthUpper,
    RepairCostSthOff,
    RepairCostSthCap,
    RepairCostSthOn,
    RepairCostLthOff,
    RepairCostLthCap,
    RepairCostLthOn,
    MaintenanceAssignment,
    MaintenanceTrigger,
    TaskDuration,
    BacklogHours,
    BacklogFlag,
    CrewOccupation,
    CrewLimit,
    AvailabilitySth,
    AvailabilityLth,
    UnavailableUnderMaintenance,
    PowerYawSth,
    PowerYawLth,
    PowerAvailabilitySth,
    PowerAvailabilityLth,
    PowerMissionLth,
    VesselSth,
    VesselLth,
    WorkHoursSth,
    OvertimeCapSth,
    WorkHoursLthFirst,
    WorkHoursLth,
    OvertimeCapLth,
    DmcLth,
    DmcLthBaseOff,
    DmcLthBaseCap,
    DmcLthBaseOn,
    DmcLthDayOff,
    DmcLthDayCap,
    DmcLthDayOn,
    DmcSth,
    DmcSthStatusOff,
    DmcSthStatusCap,
    DmcSthStatusOn,
}

impl RowFamily {
    pub const ALL: [RowFamily; 46] = [
        RowFamily::YawChoiceSth,
        RowFamily::YawChoiceLth,
        RowFamily::RulEmbedding,
        RowFamily::StatusSthLower,
        RowFamily::StatusSthUpper,
        RowFamily::StatusLthLower,
        RowFamily::StatusLthUpper,
        RowFamily::RepairCostSthOff,
        RowFamily::RepairCostSthCap,
        RowFamily::RepairCostSthOn,
        RowFamily::RepairCostLthOff,
        RowFamily::RepairCostLthCap,
        RowFamily::RepairCostLthOn,
        RowFamily::MaintenanceAssignment,
        RowFamily::MaintenanceTrigger,
        RowFamily::TaskDuration,
        RowFamily::BacklogHours,
        RowFamily::BacklogFlag,
        RowFamily::CrewOccupation,
        RowFamily::CrewLimit,
        RowFamily::AvailabilitySth,
        RowFamily::AvailabilityLth,
        RowFamily::UnavailableUnderMaintenance,
        RowFamily::PowerYawSth,
        RowFamily::PowerYawLth,
        RowFamily::PowerAvailabilitySth,
        RowFamily::PowerAvailabilityLth,
        RowFamily::PowerMissionLth,
        RowFamily::VesselSth,
        RowFamily::VesselLth,
        RowFamily::WorkHoursSth,
        RowFamily::OvertimeCapSth,
        RowFamily::WorkHoursLthFirst,
        RowFamily::WorkHoursLth,
        RowFamily::OvertimeCapLth,
        RowFamily::DmcLth,
        RowFamily::DmcLthBaseOff,
        RowFamily::DmcLthBaseCap,
        RowFamily::DmcLthBaseOn,
        RowFamily::DmcLthDayOff,
        RowFamily::DmcLthDayCap,
        RowFamily::DmcLthDayOn,
        RowFamily::DmcSth,
        RowFamily::DmcSthStatusOff,
        RowFamily::DmcSthStatusCap,
        RowFamily::DmcSthStatusOn,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            RowFamily::YawChoiceSth => "yaw_choice_sth",
            RowFamily::YawChoiceLth => "yaw_choice_lth",
            RowFamily::RulEmbedding => "rul_embedding",
            RowFamily::StatusSthLower => "status_sth_lower",
            RowFamily::StatusSthUpper => "status_sth_upper",
            RowFamily::StatusLthLower => "status_lth_lower",
            RowFamily::StatusLthUpper => "status_lth_upper",
            RowFamily::RepairCostSthOff => "repair_cost_sth_off",
            RowFamily::RepairCostSthCap => "repair_cost_sth_cap",
            RowFamily::RepairCostSthOn => "repair_cost_sth_on",
            RowFamily::RepairCostLthOff => "repair_cost_lth_off",
            RowFamily::RepairCostLthCap => "repair_cost_lth_cap",
            RowFamily::RepairCostLthOn => "repair_cost_lth_on",
            RowFamily::MaintenanceAssignment => "maintenance_assignment",
            RowFamily::MaintenanceTrigger => "maintenance_trigger",
            RowFamily::TaskDuration => "task_duration",
            RowFamily::BacklogHours => "backlog_hours",
            RowFamily::BacklogFlag => "backlog_flag",
            RowFamily::CrewOccupation => "crew_occupation",
            RowFamily::CrewLimit => "crew_limit",
            RowFamily::AvailabilitySth => "availability_sth",
            RowFamily::AvailabilityLth => "availability_lth",
            RowFamily::UnavailableUnderMaintenance => "unavailable_under_maintenance",
            RowFamily::PowerYawSth => "power_yaw_sth",
            RowFamily::PowerYawLth => "power_yaw_lth",
            RowFamily::PowerAvailabilitySth => "power_availability_sth",
            RowFamily::PowerAvailabilityLth => "power_availability_lth",
            RowFamily::PowerMissionLth => "power_mission_lth",
            RowFamily::VesselSth => "vessel_sth",
            RowFamily::VesselLth => "vessel_lth",
            RowFamily::WorkHoursSth => "work_hours_sth",
            RowFamily::OvertimeCapSth => "overtime_cap_sth",
            RowFamily::WorkHoursLthFirst => "work_hours_lth_first",
            RowFamily::WorkHoursLth => "work_hours_lth",
            RowFamily::OvertimeCapLth => "overtime_cap_lth",
            RowFamily::DmcLth => "dmc_lth",
            RowFamily::DmcLthBaseOff => "dmc_lth_base_off",
            RowFamily::DmcLthBaseCap => "dmc_lth_base_cap",
            RowFamily::DmcLthBaseOn => "dmc_lth_base_on",
            RowFamily::DmcLthDayOff => "dmc_lth_day_off",
            RowFamily::DmcLthDayCap => "dmc_lth_day_cap",
            RowFamily::DmcLthDayOn => "dmc_lth_day_on",
            RowFamily::DmcSth => "dmc_sth",
            RowFamily::DmcSthStatusOff => "dmc_sth_status_off",
            RowFamily::DmcSthStatusCap => "dmc_sth_status_cap",
            RowFamily::DmcSthStatusOn => "dmc_sth_status_on",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VarKind {
    Binary,
    Integer,
    Continuous,
}

impl VarKind {
    pub fn is_integral(self) -> bool {
        !matches!(self, VarKind::Continuous)
    }
}

/// The four signed parts of the objective.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectiveTerm {
    ShortTermProfit = 0,
    LongTermProfit = 1,
    ProlongedInterruptions = 2,
    EndOfHorizon = 3,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Variable {
    pub family: VarFamily,
    pub index: Vec<usize>,
    pub kind: VarKind,
    pub lower: f64,
    pub upper: f64,
    /// Objective coefficient split over [`ObjectiveTerm`]s.
    pub objective: [f64; 4],
}

impl Variable {
    pub fn name(&self) -> String {
        let mut name = self.family.symbol().to_string();
        for k in &self.index {
            name.push('_');
            name.push_str(&k.to_string());
        }
        name
    }

    pub fn cost(&self) -> f64 {
        self.objective.iter().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sense {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub family: RowFamily,
    pub terms: Vec<(usize, f64)>,
    pub sense: Sense,
    pub rhs: f64,
}

impl Row {
    pub fn activity(&self, values: &[f64]) -> f64 {
        self.terms.iter().map(|&(v, a)| a * values[v]).sum()
    }

    /// Violation scaled by the row magnitude: `max(1, |rhs|, max |a_k x_k|)`.
    pub fn relative_violation(&self, values: &[f64]) -> f64 {
        let act = self.activity(values);
        let raw = match self.sense {
            Sense::Le => (act - self.rhs).max(0.0),
            Sense::Ge => (self.rhs - act).max(0.0),
            Sense::Eq => (act - self.rhs).abs(),
        };
        let scale = self
            .terms
            .iter()
            .map(|&(v, a)| (a * values[v]).abs())
            .fold(self.rhs.abs().max(1.0), f64::max);
        raw / scale
    }
}
