//! Yaw-dependent scaled power curves and the scaled-power tensors consumed by
//! the optimizer.

use std::path::Path;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PowerError {
    #[error("invalid power curve: {0}")]
    InvalidCurve(String),
    #[error("invalid yaw grid: {0}")]
    InvalidGrid(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("{0}")]
    Io(String),
}

/// Parametric power curve: smooth cubic ramp between cut-in and rated speed,
/// flat at rated power up to cut-out, zero outside; yaw loss `cos(g)^p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PowerCurve {
    pub cut_in: f64,
    pub rated_speed: f64,
    pub cut_out: f64,
    /// Rated capacity in MW.
    pub rated_capacity: f64,
    pub yaw_exponent: f64,
}

impl Default for PowerCurve {
    fn default() -> Self {
        Self {
            cut_in: 3.0,
            rated_speed: 12.0,
            cut_out: 25.0,
            rated_capacity: 5.0,
            yaw_exponent: 1.88,
        }
    }
}

impl PowerCurve {
    pub fn validate(&self) -> Result<(), PowerError> {
        let ok = self.cut_in >= 0.0
            && self.cut_in < self.rated_speed
            && self.rated_speed < self.cut_out
            && self.rated_capacity > 0.0
            && self.yaw_exponent > 0.0
            && [self.cut_in, self.rated_speed, self.cut_out, self.rated_capacity, self.yaw_exponent]
                .iter()
                .all(|v| v.is_finite());
        if ok {
            Ok(())
        } else {
            Err(PowerError::InvalidCurve(format!(
                "need 0 <= cut_in < rated_speed < cut_out and positive capacity/exponent, got {self:?}"
            )))
        }
    }

    /// Scaled output at zero yaw.
    pub fn base(&self, wind: f64) -> f64 {
        if wind < self.cut_in || wind >= self.cut_out {
            0.0
        } else if wind >= self.rated_speed {
            1.0
        } else {
            let s = (wind - self.cut_in) / (self.rated_speed - self.cut_in);
            s * s * (3.0 - 2.0 * s)
        }
    }
}

fn yaw_loss(yaw_deg: f64, exponent: f64) -> f64 {
    yaw_deg.to_radians().cos().max(0.0).powf(exponent)
}

/// Zero-yaw curve given as `(wind, scaled power)` points with linear interpolation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TabulatedCurve {
    pub points: Vec<(f64, f64)>,
    pub rated_capacity: f64,
    pub yaw_exponent: f64,
}

impl TabulatedCurve {
    pub fn new(points: Vec<(f64, f64)>, rated_capacity: f64, yaw_exponent: f64) -> Result<Self, PowerError> {
        if points.len() < 2 {
            return Err(PowerError::InvalidCurve("need at least two points".into()));
        }
        if points.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(PowerError::InvalidCurve("wind speeds must be increasing".into()));
        }
        if points.iter().any(|&(_, p)| !(0.0..=1.0).contains(&p)) {
            return Err(PowerError::InvalidCurve("scaled power must lie in [0, 1]".into()));
        }
        if !(rated_capacity > 0.0 && yaw_exponent > 0.0) {
            return Err(PowerError::InvalidCurve("capacity and exponent must be positive".into()));
        }
        Ok(Self {
            points,
            rated_capacity,
            yaw_exponent,
        })
    }

    /// Read columns `wind_speed_ms, scaled_power_at_zero_yaw`.
    pub fn from_csv_path(path: &Path, rated_capacity: f64, yaw_exponent: f64) -> Result<Self, PowerError> {
        let mut rdr = csv::Reader::from_path(path).map_err(|e| PowerError::Io(format!("{}: {e}", path.display())))?;
        let mut points = Vec::new();
        for rec in rdr.deserialize::<(f64, f64)>() {
            points.push(rec.map_err(|e| PowerError::Io(e.to_string()))?);
        }
        Self::new(points, rated_capacity, yaw_exponent)
    }

    pub fn base(&self, wind: f64) -> f64 {
        let pts = &self.points;
        if wind <= pts[0].0 {
            return pts[0].1;
        }
        if wind >= pts[pts.len() - 1].0 {
            return pts[pts.len() - 1].1;
        }
        let k = pts.partition_point(|p| p.0 <= wind) - 1;
        let (x0, y0) = pts[k];
        let (x1, y1) = pts[k + 1];
        y0 + (wind - x0) / (x1 - x0) * (y1 - y0)
    }
}

/// Either power-curve implementation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum PowerModel {
    Parametric(PowerCurve),
    Tabulated(TabulatedCurve),
}

impl PowerModel {
    pub fn rated_capacity(&self) -> f64 {
        match self {
            Self::Parametric(c) => c.rated_capacity,
            Self::Tabulated(c) => c.rated_capacity,
        }
    }

    pub fn scaled_power(&self, wind: f64, yaw_deg: f64) -> f64 {
        match self {
            Self::Parametric(c) => scaled_power(c, wind, yaw_deg),
            Self::Tabulated(c) => (c.base(wind) * yaw_loss(yaw_deg, c.yaw_exponent)).clamp(0.0, 1.0),
        }
    }
}

/// Scaled power `base(v) * cos(g)^p`, clamped to `[0, 1]`.
pub fn scaled_power(curve: &PowerCurve, wind_speed: f64, yaw_deg: f64) -> f64 {
    (curve.base(wind_speed) * yaw_loss(yaw_deg, curve.yaw_exponent)).clamp(0.0, 1.0)
}

/// Discrete yaw misalignment levels; exactly one of them is 0 degrees.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct YawGrid {
    pub levels: Vec<f64>,
    pub bin_width: f64,
}

impl YawGrid {
    /// `count` levels of width `bin_width` centred on 0 degrees; `count` must be odd.
    pub fn symmetric(count: usize, bin_width: f64) -> Result<Self, PowerError> {
        if count % 2 == 0 {
            return Err(PowerError::InvalidGrid(format!("level count must be odd, got {count}")));
        }
        let half = (count / 2) as i64;
        let levels = (-half..=half).map(|k| k as f64 * bin_width).collect();
        Self::new(levels, bin_width)
    }

    pub fn new(levels: Vec<f64>, bin_width: f64) -> Result<Self, PowerError> {
        let grid = Self { levels, bin_width };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<(), PowerError> {
        let n = self.levels.len();
        if n == 0 {
            return Err(PowerError::InvalidGrid("no levels".into()));
        }
        if self.levels.iter().filter(|g| g.abs() < 1e-9).count() != 1 {
            return Err(PowerError::InvalidGrid("exactly one level must be 0 degrees".into()));
        }
        if self.levels.windows(2).any(|w| w[1] <= w[0]) {
            return Err(PowerError::InvalidGrid("levels must be increasing".into()));
        }
        if n > 1 && !(self.bin_width > 0.0) {
            return Err(PowerError::InvalidGrid("bin width must be positive".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn zero_index(&self) -> usize {
        self.levels
            .iter()
            .position(|g| g.abs() < 1e-9)
            .expect("validated grid has a zero level")
    }
}

/// Scaled-power tensors for one scenario set.
///
/// `sth[((t * n_i + i) * n_j + j) * n_s + s]` and likewise for `lth` by day.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerTable {
    pub n_hours: usize,
    pub n_days: usize,
    pub n_turbines: usize,
    pub n_levels: usize,
    pub n_scenarios: usize,
    pub sth: Vec<f64>,
    pub lth: Vec<f64>,
    /// `lth_max[(d * n_i + i) * n_s + s]` = max over yaw levels of `lth`.
    pub lth_max: Vec<f64>,
}

impl PowerTable {
    pub fn sth(&self, t: usize, i: usize, j: usize, s: usize) -> f64 {
        self.sth[((t * self.n_turbines + i) * self.n_levels + j) * self.n_scenarios + s]
    }

    pub fn lth(&self, d: usize, i: usize, j: usize, s: usize) -> f64 {
        self.lth[((d * self.n_turbines + i) * self.n_levels + j) * self.n_scenarios + s]
    }

    pub fn lth_max(&self, d: usize, i: usize, s: usize) -> f64 {
        self.lth_max[(d * self.n_turbines + i) * self.n_scenarios + s]
    }
}

/// Hourly wind trajectories per scenario; `hourly[s]` covers the short-term day
/// followed by `n_days` long-term days (24 hours each), possibly more.
pub struct WindView<'a> {
    pub hourly: &'a [Vec<f64>],
    pub n_days: usize,
    pub n_turbines: usize,
}

/// Evaluate scaled power for every hour of the short-term day and every
/// long-term day. Daily values are the mean of that day's 24 hourly values.
pub fn power_table(model: &PowerModel, grid: &YawGrid, winds: &WindView<'_>) -> Result<PowerTable, PowerError> {
    grid.validate()?;
    let n_s = winds.hourly.len();
    let n_days = winds.n_days;
    let need = 24 * (1 + n_days);
    if n_s == 0 {
        return Err(PowerError::Shape("no scenarios".into()));
    }
    if let Some(s) = winds.hourly.iter().position(|w| w.len() < need) {
        return Err(PowerError::Shape(format!(
            "scenario {s} has {} hours, need {need}",
            winds.hourly[s].len()
        )));
    }
    if winds.hourly.iter().flatten().any(|&v| !(v.is_finite() && v >= 0.0)) {
        return Err(PowerError::Shape("wind speeds must be finite and nonnegative".into()));
    }
    let (n_i, n_j) = (winds.n_turbines, grid.len());
    let mut sth = vec![0.0; 24 * n_i * n_j * n_s];
    let mut lth = vec![0.0; n_days * n_i * n_j * n_s];
    let mut lth_max = vec![0.0; n_days * n_i * n_s];
    for s in 0..n_s {
        let w = &winds.hourly[s];
        for (j, &g) in grid.levels.iter().enumerate() {
            for t in 0..24 {
                let f = model.scaled_power(w[t], g);
                for i in 0..n_i {
                    sth[((t * n_i + i) * n_j + j) * n_s + s] = f;
                }
            }
            for d in 0..n_days {
                let start = 24 * (d + 1);
                let mean = w[start..start + 24]
                    .iter()
                    .map(|&v| model.scaled_power(v, g))
                    .sum::<f64>()
                    / 24.0;
                for i in 0..n_i {
                    lth[((d * n_i + i) * n_j + j) * n_s + s] = mean;
                    let m = &mut lth_max[(d * n_i + i) * n_s + s];
                    *m = f64::max(*m, mean);
                }
            }
        }
    }
    Ok(PowerTable {
        n_hours: 24,
        n_days,
        n_turbines: n_i,
        n_levels: n_j,
        n_scenarios: n_s,
        sth,
        lth,
        lth_max,
    })
}
