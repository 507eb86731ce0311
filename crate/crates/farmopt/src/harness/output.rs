//! `metrics.csv` and `rolls.jsonl` writers.

use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use super::campaign::CampaignOutcome;
use super::record::{OmMetrics, RollRecord};
use super::HarnessError;

pub const METRICS_COLUMNS: [&str; 10] = [
    "policy",
    "total_cost",
    "revenue_loss",
    "production_loss_mwh",
    "downtime_days",
    "access_downtime_days",
    "lost_cycle_days_per_task",
    "maintenance_count",
    "corrective_count",
    "vessel_rentals",
];

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> HarnessError + '_ {
    move |e| HarnessError::Io { path: path.to_path_buf(), message: e.to_string() }
}

/// One row per policy.
pub fn write_metrics_csv<W: Write>(writer: W, metrics: &[&OmMetrics]) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(METRICS_COLUMNS)?;
    for m in metrics {
        w.write_record([
            m.policy.name().to_string(),
            m.total_cost.to_string(),
            m.revenue_loss.to_string(),
            m.production_loss_mwh.to_string(),
            m.downtime_days.to_string(),
            m.access_downtime_days.to_string(),
            m.lost_cycle_days_per_task.map_or(String::new(), |v| v.to_string()),
            m.maintenance_count.to_string(),
            m.corrective_count.to_string(),
            m.vessel_rentals.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// One JSON object per roll.
pub fn write_rolls_jsonl<W: Write>(mut writer: W, records: &[RollRecord]) -> std::io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut writer, r)?;
        writer.write_all(b"\n")?;
    }
    writer.flush()
}

pub fn read_rolls_jsonl<R: Read>(reader: R) -> Result<Vec<RollRecord>, serde_json::Error> {
    BufReader::new(reader)
        .lines()
        .map_while(Result::ok)
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(&l))
        .collect()
}

/// Write `metrics.csv` and `rolls.jsonl` under `dir`. With several truth seeds
/// each seed gets its own `seed_<n>` subdirectory. Returns the directories written.
pub fn write_outcomes(dir: &Path, outcomes: &[CampaignOutcome]) -> Result<Vec<PathBuf>, HarnessError> {
    let mut seeds: Vec<u64> = outcomes.iter().map(|o| o.metrics.seed).collect();
    seeds.dedup();
    let mut written = Vec::new();
    for &seed in &seeds {
        let target = if seeds.len() == 1 { dir.to_path_buf() } else { dir.join(format!("seed_{seed}")) };
        std::fs::create_dir_all(&target).map_err(io_err(&target))?;
        let group: Vec<&CampaignOutcome> = outcomes.iter().filter(|o| o.metrics.seed == seed).collect();

        let path = target.join("metrics.csv");
        let file = std::fs::File::create(&path).map_err(io_err(&path))?;
        let metrics: Vec<&OmMetrics> = group.iter().map(|o| &o.metrics).collect();
        write_metrics_csv(BufWriter::new(file), &metrics)
            .map_err(|e| HarnessError::Io { path: path.clone(), message: e.to_string() })?;

        let path = target.join("rolls.jsonl");
        let mut w = BufWriter::new(std::fs::File::create(&path).map_err(io_err(&path))?);
        for o in &group {
            write_rolls_jsonl(&mut w, &o.records).map_err(io_err(&path))?;
        }
        written.push(target);
    }
    Ok(written)
}
