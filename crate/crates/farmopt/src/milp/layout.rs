use serde::Serialize;

use super::ledger::VarFamily;

/// Index-set sizes of one instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Dims {
    pub hours: usize,
    pub turbines: usize,
    pub levels: usize,
    pub days: usize,
    pub scenarios: usize,
}

impl Dims {
    /// Number of `(e, d)` pairs with `e <= d` over the long-term days.
    pub fn day_pairs(&self) -> usize {
        self.days * (self.days + 1) / 2
    }

    /// Number of variables of `family`, by the index-set sizes alone.
    pub fn family_len(&self, family: VarFamily) -> usize {
        let (t, i, j, d, s) = (self.hours, self.turbines, self.levels, self.days, self.scenarios);
        match family {
            VarFamily::Yaw => t * i * j,
            VarFamily::YawLth => d * i * j * s,
            VarFamily::Maint | VarFamily::RepairCost => t * i,
            VarFamily::MaintLth
            | VarFamily::StatusLth
            | VarFamily::AvailLth
            | VarFamily::PowerLth
            | VarFamily::RepairCostLth
            | VarFamily::DmcStatusLthBase => d * i * s,
            VarFamily::Rul
            | VarFamily::Status
            | VarFamily::Backlog
            | VarFamily::Interrupted
            | VarFamily::DmcStatus => i * s,
            VarFamily::Trigger | VarFamily::Dmc => i,
            VarFamily::UnderMaint | VarFamily::Crew | VarFamily::Avail | VarFamily::Power => t * i * s,
            VarFamily::Overtime => s,
            VarFamily::OvertimeLth | VarFamily::VesselLth => d * s,
            VarFamily::Vessel => 1,
            VarFamily::DmcLth => d * i,
            VarFamily::DmcStatusLth => self.day_pairs() * i * s,
        }
    }
}

/// Maps family-local indices to column numbers. Families are laid out in
/// [`VarFamily::ALL`] order, each in row-major order of its index tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Layout {
    pub dims: Dims,
    offsets: Vec<usize>,
    total: usize,
}

impl Layout {
    pub fn new(dims: Dims) -> Self {
        let mut offsets = Vec::with_capacity(VarFamily::ALL.len());
        let mut total = 0;
        for f in VarFamily::ALL {
            offsets.push(total);
            total += dims.family_len(f);
        }
        Self { dims, offsets, total }
    }

    pub fn len(&self) -> usize {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn offset(&self, family: VarFamily) -> usize {
        self.offsets[family as usize]
    }

    pub fn range(&self, family: VarFamily) -> std::ops::Range<usize> {
        let a = self.offset(family);
        a..a + self.dims.family_len(family)
    }

    fn tis(&self, f: VarFamily, t: usize, i: usize, s: usize) -> usize {
        self.offset(f) + (t * self.dims.turbines + i) * self.dims.scenarios + s
    }

    fn is(&self, f: VarFamily, i: usize, s: usize) -> usize {
        self.offset(f) + i * self.dims.scenarios + s
    }

    pub fn yaw(&self, t: usize, i: usize, j: usize) -> usize {
        self.offset(VarFamily::Yaw) + (t * self.dims.turbines + i) * self.dims.levels + j
    }

    pub fn yaw_lth(&self, d: usize, i: usize, j: usize, s: usize) -> usize {
        let n = &self.dims;
        self.offset(VarFamily::YawLth) + ((d * n.turbines + i) * n.levels + j) * n.scenarios + s
    }

    pub fn maint(&self, t: usize, i: usize) -> usize {
        self.offset(VarFamily::Maint) + t * self.dims.turbines + i
    }

    pub fn maint_lth(&self, d: usize, i: usize, s: usize) -> usize {
        self.tis(VarFamily::MaintLth, d, i, s)
    }

    pub fn rul(&self, i: usize, s: usize) -> usize {
        self.is(VarFamily::Rul, i, s)
    }

    pub fn status(&self, i: usize, s: usize) -> usize {
        self.is(VarFamily::Status, i, s)
    }

    pub fn status_lth(&self, d: usize, i: usize, s: usize) -> usize {
        self.tis(VarFamily::StatusLth, d, i, s)
    }

    pub fn trigger(&self, i: usize) -> usize {
        self.offset(VarFamily::Trigger) + i
    }

    pub fn under_maint(&self, t: usize, i: usize, s: usize) -> usize {
        self.tis(VarFamily::UnderMaint, t, i, s)
    }

    pub fn crew(&self, t: usize, i: usize, s: usize) -> usize {
        self.tis(VarFamily::Crew, t, i, s)
    }

    pub fn avail(&self, t: usize, i: usize, s: usize) -> usize {
        self.tis(VarFamily::Avail, t, i, s)
    }

    pub fn power(&self, t: usize, i: usize, s: usize) -> usize {
        self.tis(VarFamily::Power, t, i, s)
    }

    pub fn overtime(&self, s: usize) -> usize {
        self.offset(VarFamily::Overtime) + s
    }

    pub fn overtime_lth(&self, d: usize, s: usize) -> usize {
        self.offset(VarFamily::OvertimeLth) + d * self.dims.scenarios + s
    }

    pub fn vessel(&self) -> usize {
        self.offset(VarFamily::Vessel)
    }

    pub fn vessel_lth(&self, d: usize, s: usize) -> usize {
        self.offset(VarFamily::VesselLth) + d * self.dims.scenarios + s
    }

    pub fn backlog(&self, i: usize, s: usize) -> usize {
        self.is(VarFamily::Backlog, i, s)
    }

    pub fn interrupted(&self, i: usize, s: usize) -> usize {
        self.is(VarFamily::Interrupted, i, s)
    }

    pub fn avail_lth(&self, d: usize, i: usize, s: usize) -> usize {
        self.tis(VarFamily::AvailLth, d, i, s)
    }

    pub fn power_lth(&self, d: usize, i: usize, s: usize) -> usize {
        self.tis(VarFamily::PowerLth, d, i, s)
    }

    pub fn repair_cost(&self, t: usize, i: usize) -> usize {
        self.offset(VarFamily::RepairCost) + t * self.dims.turbines + i
    }

    pub fn repair_cost_lth(&self, d: usize, i: usize, s: usize) -> usize {
        self.tis(VarFamily::RepairCostLth, d, i, s)
    }

    pub fn dmc(&self, i: usize) -> usize {
        self.offset(VarFamily::Dmc) + i
    }

    pub fn dmc_lth(&self, d: usize, i: usize) -> usize {
        self.offset(VarFamily::DmcLth) + d * self.dims.turbines + i
    }

    pub fn dmc_status(&self, i: usize, s: usize) -> usize {
        self.is(VarFamily::DmcStatus, i, s)
    }

    pub fn dmc_status_lth_base(&self, d: usize, i: usize, s: usize) -> usize {
        self.tis(VarFamily::DmcStatusLthBase, d, i, s)
    }

    /// `acL[e, d, i, s]` for `e <= d`.
    pub fn dmc_status_lth(&self, e: usize, d: usize, i: usize, s: usize) -> usize {
        debug_assert!(e <= d);
        let pair = d * (d + 1) / 2 + e;
        self.tis(VarFamily::DmcStatusLth, pair, i, s)
    }
}

/// Index tuples of `family` in layout order.
pub fn index_tuples(dims: &Dims, family: VarFamily) -> Vec<Vec<usize>> {
    let (t, i, j, d, s) = (dims.hours, dims.turbines, dims.levels, dims.days, dims.scenarios);
    let shape: Vec<usize> = match family {
        VarFamily::Yaw => vec![t, i, j],
        VarFamily::YawLth => vec![d, i, j, s],
        VarFamily::Maint | VarFamily::RepairCost => vec![t, i],
        VarFamily::MaintLth
        | VarFamily::StatusLth
        | VarFamily::AvailLth
        | VarFamily::PowerLth
        | VarFamily::RepairCostLth
        | VarFamily::DmcStatusLthBase => vec![d, i, s],
        VarFamily::Rul
        | VarFamily::Status
        | VarFamily::Backlog
        | VarFamily::Interrupted
        | VarFamily::DmcStatus => vec![i, s],
        VarFamily::Trigger | VarFamily::Dmc => vec![i],
        VarFamily::UnderMaint | VarFamily::Crew | VarFamily::Avail | VarFamily::Power => vec![t, i, s],
        VarFamily::Overtime => vec![s],
        VarFamily::OvertimeLth | VarFamily::VesselLth => vec![d, s],
        VarFamily::Vessel => vec![],
        VarFamily::DmcLth => vec![d, i],
        VarFamily::DmcStatusLth => {
            let mut out = Vec::with_capacity(dims.family_len(family));
            for dd in 0..d {
                for e in 0..=dd {
                    for ii in 0..i {
                        for ss in 0..s {
                            out.push(vec![e, dd, ii, ss]);
                        }
                    }
                }
            }
            return out;
        }
    };
    let total: usize = shape.iter().product();
    let mut out = Vec::with_capacity(total);
    let mut cur = vec![0; shape.len()];
    for _ in 0..total {
        out.push(cur.clone());
        for k in (0..shape.len()).rev() {
            cur[k] += 1;
            if cur[k] < shape[k] {
                break;
            }
            cur[k] = 0;
        }
    }
    out
}
