use serde::{Deserialize, Serialize};

use super::ScenarioError;

/// Weather and daylight limits for crew transfer, plus bare repair durations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AccessRule {
    /// Wind speed safety threshold (m/s), exclusive.
    pub wind_max: f64,
    /// Wave height safety threshold (m), exclusive.
    pub wave_max: f64,
    /// Hour of first light; work allowed from this hour on.
    pub first_light: usize,
    /// Hour of last light; no work from this hour on.
    pub last_light: usize,
    pub preventive_hours: u32,
    pub corrective_hours: u32,
    /// Longest mission time reported before the scan gives up.
    pub mission_cap_hours: u32,
}

impl Default for AccessRule {
    fn default() -> Self {
        Self {
            wind_max: 15.0,
            wave_max: 1.8,
            first_light: 6,
            last_light: 21,
            preventive_hours: 6,
            corrective_hours: 12,
            mission_cap_hours: 72,
        }
    }
}

impl AccessRule {
    pub fn validate(&self) -> Result<(), ScenarioError> {
        let bad = |m: &str| Err(ScenarioError::InvalidAccess(m.to_string()));
        if !(self.wind_max > 0.0 && self.wave_max > 0.0) {
            return bad("thresholds must be positive");
        }
        if !(self.first_light < self.last_light && self.last_light <= 24) {
            return bad("need first_light < last_light <= 24");
        }
        if self.preventive_hours == 0 || self.corrective_hours == 0 {
            return bad("repair durations must be positive");
        }
        if self.mission_cap_hours < self.preventive_hours.max(self.corrective_hours) {
            return bad("mission cap must be at least the longest repair duration");
        }
        Ok(())
    }

    pub fn daylight_hours(&self) -> usize {
        self.last_light - self.first_light
    }
}

/// Whether a crew can work at a turbine during this hour.
pub fn accessible(rule: &AccessRule, wind: f64, wave: f64, hour_of_day: usize) -> bool {
    let h = hour_of_day % 24;
    wind < rule.wind_max && wave < rule.wave_max && rule.first_light <= h && h < rule.last_light
}

/// Mission time of a task: elapsed hours from `start` until `repair_hours`
/// accessible hours have been worked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MissionTime {
    pub hours: u32,
    /// The cap was hit before the repair could be completed.
    pub capped: bool,
}

/// Scan `access[start..]`; hours past the end of the slice count as inaccessible.
pub fn mission_time(rule: &AccessRule, access: &[bool], start: usize, repair_hours: u32) -> MissionTime {
    let mut worked = 0;
    for elapsed in 1..=rule.mission_cap_hours {
        if access.get(start + elapsed as usize - 1).copied().unwrap_or(false) {
            worked += 1;
        }
        if worked >= repair_hours {
            return MissionTime {
                hours: elapsed,
                capped: false,
            };
        }
    }
    MissionTime {
        hours: rule.mission_cap_hours,
        capped: true,
    }
}
