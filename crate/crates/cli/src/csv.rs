//! `t,D,L` time series files.
//!
//! Values are written in scientific notation with 17 significant digits,
//! which reads back to the identical `f64`.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use predprey::{Params, Point, RunConfig, Trajectory64};

use crate::error::CliError;

pub const HEADER: &str = "t,D,L";

/// Times and states without run metadata, as read from a CSV file.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub times: Vec<f64>,
    pub states: Vec<Point>,
}

impl Series {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Reattaches run metadata.
    pub fn into_trajectory(self, params: Params, config: RunConfig<f64>) -> Result<Trajectory64, CliError> {
        Ok(Trajectory64::new(self.times, self.states, params, config)?)
    }
}

impl From<&Trajectory64> for Series {
    fn from(t: &Trajectory64) -> Self {
        Self {
            times: t.times.clone(),
            states: t.states.clone(),
        }
    }
}

pub fn format_value(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_rows<W: Write>(out: &mut W, times: &[f64], states: &[Point]) -> io::Result<()> {
    writeln!(out, "{HEADER}")?;
    for (t, s) in times.iter().zip(states) {
        writeln!(out, "{},{},{}", format_value(*t), format_value(s.d), format_value(s.l))?;
    }
    Ok(())
}

pub fn write_trajectory(path: &Path, traj: &Trajectory64) -> Result<(), CliError> {
    let file = fs::File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut out = BufWriter::new(file);
    write_rows(&mut out, &traj.times, &traj.states)
        .and_then(|_| out.flush())
        .map_err(|e| CliError::io(path, e))
}

pub fn parse_series(text: &str) -> Result<Series, String> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == HEADER => {}
        Some((_, h)) => return Err(format!("line 1: expected header '{HEADER}', found '{h}'")),
        None => return Err("empty file".into()),
    }
    let mut series = Series {
        times: Vec::new(),
        states: Vec::new(),
    };
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(format!("line {}: expected 3 fields, found {}", i + 1, fields.len()));
        }
        let mut v = [0.0; 3];
        for (slot, field) in v.iter_mut().zip(&fields) {
            *slot = field
                .trim()
                .parse()
                .map_err(|e| format!("line {}: '{field}': {e}", i + 1))?;
        }
        series.times.push(v[0]);
        series.states.push(Point::new(v[1], v[2]));
    }
    if series.is_empty() {
        return Err("no data rows".into());
    }
    Ok(series)
}

pub fn read_series(path: &Path) -> Result<Series, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_series(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}
