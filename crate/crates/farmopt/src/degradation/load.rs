use std::path::Path;

use serde::{Deserialize, Serialize};

use super::DegradationError;

/// Nominal loading condition: perfect alignment at 10 m/s.
pub const NOMINAL_YAW_DEG: f64 = 0.0;
pub const NOMINAL_WIND_MS: f64 = 10.0;

/// Closed-form load ratio used when no measured table is supplied:
/// `phi / phi0 = (v / v0)^wind_exponent * (1 + yaw_linear * g + yaw_quadratic * g^2)`,
/// with `g` the yaw offset in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SyntheticLoad {
    pub wind_exponent: f64,
    pub yaw_linear: f64,
    pub yaw_quadratic: f64,
}

impl Default for SyntheticLoad {
    fn default() -> Self {
        Self {
            wind_exponent: 1.5,
            yaw_linear: 0.004,
            yaw_quadratic: 0.0008,
        }
    }
}

impl SyntheticLoad {
    pub fn ratio(&self, yaw_deg: f64, wind: f64) -> f64 {
        (wind / NOMINAL_WIND_MS).powf(self.wind_exponent)
            * (1.0 + self.yaw_linear * yaw_deg + self.yaw_quadratic * yaw_deg * yaw_deg)
    }
}

/// Result of a factor lookup; `clamped` is set when the wind speed fell outside the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorLookup {
    pub factor: f64,
    pub clamped: bool,
}

/// Load ratios `phi / phi0` on a (yaw level, wind bin) grid together with the
/// S-N fatigue exponent that turns them into relative-RUL factors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoadFactorTable {
    /// Yaw level centres in degrees, one row each.
    pub yaw_levels: Vec<f64>,
    /// Wind-speed bin centres in m/s, strictly increasing.
    pub wind_bins: Vec<f64>,
    /// `ratios[j][k]` is `phi / phi0` at yaw level `j` and wind bin `k`.
    pub ratios: Vec<Vec<f64>>,
    /// Fatigue strength exponent `C2`.
    pub fatigue_exponent: f64,
    /// Single-cycle strength `C1`; it cancels in the cycle ratio and is kept for reference.
    pub single_cycle_strength: f64,
}

impl LoadFactorTable {
    pub fn new(
        yaw_levels: Vec<f64>,
        wind_bins: Vec<f64>,
        ratios: Vec<Vec<f64>>,
        fatigue_exponent: f64,
        single_cycle_strength: f64,
    ) -> Result<Self, DegradationError> {
        let table = Self {
            yaw_levels,
            wind_bins,
            ratios,
            fatigue_exponent,
            single_cycle_strength,
        };
        table.validate()?;
        Ok(table)
    }

    pub fn synthetic(
        model: &SyntheticLoad,
        yaw_levels: &[f64],
        wind_bins: &[f64],
        fatigue_exponent: f64,
    ) -> Result<Self, DegradationError> {
        let ratios = yaw_levels
            .iter()
            .map(|&g| wind_bins.iter().map(|&v| model.ratio(g, v)).collect())
            .collect();
        Self::new(
            yaw_levels.to_vec(),
            wind_bins.to_vec(),
            ratios,
            fatigue_exponent,
            1.0,
        )
    }

    /// Default wind bins: 2 to 26 m/s in 1 m/s steps.
    pub fn default_wind_bins() -> Vec<f64> {
        (2..=26).map(f64::from).collect()
    }

    fn validate(&self) -> Result<(), DegradationError> {
        let bad = |m: String| Err(DegradationError::InvalidLoadTable(m));
        if self.yaw_levels.is_empty() || self.wind_bins.len() < 2 {
            return bad("need at least one yaw level and two wind bins".into());
        }
        if self.wind_bins.windows(2).any(|w| w[1] <= w[0]) {
            return bad("wind bins must be strictly increasing".into());
        }
        if self.ratios.len() != self.yaw_levels.len()
            || self.ratios.iter().any(|r| r.len() != self.wind_bins.len())
        {
            return bad("ratio grid does not match the yaw levels and wind bins".into());
        }
        if self.ratios.iter().flatten().any(|&r| !(r.is_finite() && r > 0.0)) {
            return bad("load ratios must be finite and positive".into());
        }
        if !(self.fatigue_exponent.is_finite() && self.fatigue_exponent > 0.0) {
            return bad("fatigue exponent must be positive".into());
        }
        let Some(j0) = self.yaw_index(NOMINAL_YAW_DEG) else {
            return bad("table has no 0 degree yaw row".into());
        };
        let (base, _) = self.interpolated_ratio(j0, NOMINAL_WIND_MS);
        if (base - 1.0).abs() > 1e-6 {
            return bad(format!("load ratio at the nominal cell is {base}, expected 1"));
        }
        Ok(())
    }

    pub fn yaw_index(&self, yaw_deg: f64) -> Option<usize> {
        self.yaw_levels.iter().position(|&g| (g - yaw_deg).abs() < 1e-9)
    }

    fn interpolated_ratio(&self, j: usize, wind: f64) -> (f64, bool) {
        let bins = &self.wind_bins;
        let row = &self.ratios[j];
        let last = bins.len() - 1;
        if wind <= bins[0] {
            return (row[0], wind < bins[0]);
        }
        if wind >= bins[last] {
            return (row[last], wind > bins[last]);
        }
        let k = bins.partition_point(|&b| b <= wind) - 1;
        let w = (wind - bins[k]) / (bins[k + 1] - bins[k]);
        (row[k] + w * (row[k + 1] - row[k]), false)
    }

    /// Load ratio `phi / phi0` at a yaw level and wind speed.
    pub fn load_ratio(&self, yaw_level: usize, wind: f64) -> Result<f64, DegradationError> {
        self.check_args(yaw_level, wind)?;
        Ok(self.interpolated_ratio(yaw_level, wind).0)
    }

    fn check_args(&self, yaw_level: usize, wind: f64) -> Result<(), DegradationError> {
        if yaw_level >= self.yaw_levels.len() {
            return Err(DegradationError::YawLevelOutOfRange(yaw_level));
        }
        if !(wind.is_finite() && wind >= 0.0) {
            return Err(DegradationError::InvalidWind(wind));
        }
        Ok(())
    }

    pub fn from_csv_path(path: &Path, fatigue_exponent: f64) -> Result<Self, DegradationError> {
        let file = std::fs::File::open(path)
            .map_err(|e| DegradationError::Io(format!("{}: {e}", path.display())))?;
        Self::from_csv_reader(file, fatigue_exponent)
    }

    /// Parse a table whose header lists wind bins and whose first column lists yaw levels.
    pub fn from_csv_reader<R: std::io::Read>(
        reader: R,
        fatigue_exponent: f64,
    ) -> Result<Self, DegradationError> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
        let parse = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| DegradationError::InvalidLoadTable(format!("'{s}': {e}")))
        };
        let header = rdr
            .headers()
            .map_err(|e| DegradationError::InvalidLoadTable(e.to_string()))?
            .clone();
        let wind_bins = header
            .iter()
            .skip(1)
            .map(parse)
            .collect::<Result<Vec<_>, _>>()?;
        let mut yaw_levels = Vec::new();
        let mut ratios = Vec::new();
        for record in rdr.records() {
            let record = record.map_err(|e| DegradationError::InvalidLoadTable(e.to_string()))?;
            let mut cells = record.iter();
            let yaw = cells
                .next()
                .ok_or_else(|| DegradationError::InvalidLoadTable("empty row".into()))?;
            yaw_levels.push(parse(yaw)?);
            ratios.push(cells.map(parse).collect::<Result<Vec<_>, _>>()?);
        }
        Self::new(yaw_levels, wind_bins, ratios, fatigue_exponent, 1.0)
    }
}

/// Relative-RUL factor `F = (phi / phi0)^C2` at a yaw level and wind speed.
///
/// The load ratio is interpolated linearly between wind bins before the power
/// is taken. Wind speeds outside the grid use the nearest bin and set `clamped`.
pub fn relative_rul_factor(
    table: &LoadFactorTable,
    yaw_level: usize,
    wind_speed: f64,
) -> Result<FactorLookup, DegradationError> {
    table.check_args(yaw_level, wind_speed)?;
    let (ratio, clamped) = table.interpolated_ratio(yaw_level, wind_speed);
    Ok(FactorLookup {
        factor: ratio.powf(table.fatigue_exponent),
        clamped,
    })
}
