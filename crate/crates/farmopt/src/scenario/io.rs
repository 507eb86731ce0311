use std::io::{Read, Write};
use std::path::Path;

use super::weather::WeatherPaths;
use super::ScenarioError;

fn io_err(e: impl std::fmt::Display) -> ScenarioError {
    ScenarioError::Io(e.to_string())
}

/// Write one variable as `scenario, period, value` rows.
pub fn write_variable<W: Write>(writer: W, series: &[Vec<f64>]) -> Result<(), ScenarioError> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["scenario", "period", "value"]).map_err(io_err)?;
    for (s, row) in series.iter().enumerate() {
        for (h, v) in row.iter().enumerate() {
            w.write_record([s.to_string(), h.to_string(), format!("{v:?}")])
                .map_err(io_err)?;
        }
    }
    w.flush().map_err(io_err)
}

/// Read a `scenario, period, value` file back into rows; every scenario must
/// list contiguous periods starting at 0.
pub fn read_variable<R: Read>(reader: R) -> Result<Vec<Vec<f64>>, ScenarioError> {
    let mut rdr = csv::Reader::from_reader(reader);
    let mut out: Vec<Vec<f64>> = Vec::new();
    for rec in rdr.deserialize::<(usize, usize, f64)>() {
        let (s, h, v) = rec.map_err(io_err)?;
        if s > out.len() {
            return Err(ScenarioError::Io(format!("scenario {s} appears before scenario {}", out.len())));
        }
        if s == out.len() {
            out.push(Vec::new());
        }
        let row = &mut out[s];
        if h != row.len() {
            return Err(ScenarioError::Io(format!("scenario {s}: period {h} out of order")));
        }
        row.push(v);
    }
    Ok(out)
}

/// Dump wind, wave and price to `wind.csv`, `wave.csv`, `price.csv` in `dir`.
pub fn save_paths(dir: &Path, paths: &WeatherPaths) -> Result<(), ScenarioError> {
    std::fs::create_dir_all(dir).map_err(io_err)?;
    for (name, series) in [("wind", &paths.wind), ("wave", &paths.wave), ("price", &paths.price)] {
        let file = std::fs::File::create(dir.join(format!("{name}.csv"))).map_err(io_err)?;
        write_variable(file, series)?;
    }
    Ok(())
}

pub fn load_paths(dir: &Path) -> Result<WeatherPaths, ScenarioError> {
    let read = |name: &str| {
        let file = std::fs::File::open(dir.join(format!("{name}.csv"))).map_err(io_err)?;
        read_variable(file)
    };
    let paths = WeatherPaths {
        wind: read("wind")?,
        wave: read("wave")?,
        price: read("price")?,
    };
    let n = paths.wind.len();
    if paths.wave.len() != n || paths.price.len() != n {
        return Err(ScenarioError::Shape("variables have different scenario counts".into()));
    }
    Ok(paths)
}
