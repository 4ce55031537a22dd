use std::collections::HashSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use predprey::invariants::region_for;
use predprey::{
    caputo_solve, check_trajectory, classify, iterate, Params, Point, RunConfig, StabilityReport, Trajectory64,
    ViolationReport,
};
use rayon::prelude::*;

use crate::csv;
use crate::error::CliError;
use crate::report;

/// Artifacts a scenario asks for besides the trajectory itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Outputs {
    pub timeseries: bool,
    pub phase: bool,
    pub stability: bool,
    pub verification: bool,
}

impl Default for Outputs {
    fn default() -> Self {
        Self {
            timeseries: true,
            phase: true,
            stability: false,
            verification: false,
        }
    }
}

impl Outputs {
    pub const NAMES: [&'static str; 4] = ["timeseries", "phase", "stability", "verification"];

    pub fn from_names(names: &[String]) -> Result<Self, CliError> {
        let mut o = Self {
            timeseries: false,
            phase: false,
            stability: false,
            verification: false,
        };
        for n in names {
            match n.as_str() {
                "timeseries" => o.timeseries = true,
                "phase" => o.phase = true,
                "stability" => o.stability = true,
                "verification" => o.verification = true,
                other => {
                    return Err(CliError::Config(format!(
                        "unknown output '{other}', expected one of {}",
                        Self::NAMES.join(", ")
                    )))
                }
            }
        }
        Ok(o)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub params: Params,
    pub initial: Point,
    pub run: RunConfig<f64>,
    pub outputs: Outputs,
}

impl Scenario {
    pub fn solve(&self) -> predprey::Result<Trajectory64> {
        let traj = match &self.run {
            RunConfig::Classical(cfg) => iterate(&self.params, cfg, self.initial)?,
            RunConfig::Fractional(cfg) => caputo_solve(&self.params, cfg, self.initial)?,
        };
        Ok(traj.with_label(self.name.clone()))
    }

    /// `h` for Euler and Mickens, σ for the fractional system.
    pub fn stability_param(&self) -> f64 {
        self.run.sigma().unwrap_or_else(|| self.run.h())
    }

    pub fn stability(&self) -> predprey::Result<Vec<StabilityReport<f64>>> {
        classify(&self.params, self.run.scheme(), self.stability_param())
    }
}

/// Region check result; `Err` when no region applies to the run.
pub type Verification = Result<ViolationReport<f64>, String>;

pub fn verify(traj: &Trajectory64) -> Verification {
    region_for(traj)
        .and_then(|region| check_trajectory(traj, &region))
        .map_err(|e| e.to_string())
}

#[derive(Debug)]
pub struct Outcome {
    pub trajectory: Trajectory64,
    pub csv: Option<PathBuf>,
    pub verification: Option<Verification>,
}

/// Solves one scenario and writes its requested files into `out_dir`.
pub fn run_scenario(sc: &Scenario, out_dir: Option<&Path>, verify_all: bool) -> Result<Outcome, CliError> {
    let trajectory = sc.solve()?;
    let verification = (verify_all || sc.outputs.verification).then(|| verify(&trajectory));
    let mut csv_path = None;
    if let Some(dir) = out_dir {
        let path = dir.join(format!("{}.csv", sc.name));
        csv::write_trajectory(&path, &trajectory)?;
        csv_path = Some(path);
        if sc.outputs.stability {
            let mut text = String::new();
            for r in sc.stability()? {
                writeln!(text, "{}", report::stability(&r)).unwrap();
            }
            write_text(&dir.join(format!("{}_stability.txt", sc.name)), &text)?;
        }
        if sc.outputs.verification {
            let v = verification.as_ref().expect("computed above");
            write_text(&dir.join(format!("{}_verify.txt", sc.name)), &report::verification(&sc.name, v))?;
        }
    }
    Ok(Outcome {
        trajectory,
        csv: csv_path,
        verification,
    })
}

/// Runs scenarios in parallel. Each entry of the result corresponds to the
/// scenario at the same index.
pub fn run_batch(
    scenarios: &[Scenario],
    out_dir: Option<&Path>,
    verify_all: bool,
) -> Result<Vec<Result<Outcome, CliError>>, CliError> {
    let mut seen = HashSet::new();
    for sc in scenarios {
        if !seen.insert(sc.name.as_str()) {
            return Err(CliError::Config(format!("duplicate scenario name '{}'", sc.name)));
        }
        if sc.name.is_empty() || sc.name.contains(['/', '\\']) {
            return Err(CliError::Config(format!("invalid scenario name '{}'", sc.name)));
        }
    }
    if let Some(dir) = out_dir {
        if !scenarios.is_empty() {
            fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        }
    }
    Ok(scenarios.par_iter().map(|sc| run_scenario(sc, out_dir, verify_all)).collect())
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}
