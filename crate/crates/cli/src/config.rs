//! TOML run configuration.
//!
//! ```toml
//! [model]
//! alpha = 0.05
//! beta = 0.3
//! p = 0.4
//! capacity = 1.0
//!
//! [run]
//! scheme = "mickens"     # reference | euler | mickens | fractional
//! h = 0.25
//! t_end = 300.0
//! sigma = 0.95           # fractional only
//! d0 = 0.2
//! l0 = 0.3
//! output = "out"
//! outputs = ["timeseries", "phase", "stability", "verification"]
//!
//! [[scenario]]           # optional; each entry overrides [model] and [run]
//! name = "euler-fine"
//! scheme = "euler"
//! h = 0.05
//! ```
//!
//! Without any `[[scenario]]` the file describes a single run named after
//! its scheme. `scenario = []` describes no runs at all. Command-line flags
//! override every value from the file, including per-scenario ones.

use std::fs;
use std::path::{Path, PathBuf};

use predprey::{FractionalConfig, Params, Point, RunConfig, Scheme, SchemeConfig};
use serde::Deserialize;

use crate::error::CliError;
use crate::scenario::{Outputs, Scenario};

pub const DEFAULT_ALPHA: f64 = 0.05;
pub const DEFAULT_BETA: f64 = 0.3;
pub const DEFAULT_P: f64 = 0.4;
pub const DEFAULT_CAPACITY: f64 = 1.0;
pub const DEFAULT_D0: f64 = 0.2;
pub const DEFAULT_L0: f64 = 0.3;
pub const DEFAULT_H: f64 = 0.25;
pub const DEFAULT_T_END: f64 = 300.0;
pub const DEFAULT_SIGMA: f64 = 0.95;

/// Partially specified scenario values. Later layers win.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Layer {
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub p: Option<f64>,
    pub capacity: Option<f64>,
    pub scheme: Option<String>,
    pub h: Option<f64>,
    pub t_end: Option<f64>,
    pub sigma: Option<f64>,
    pub d0: Option<f64>,
    pub l0: Option<f64>,
    pub corrector_passes: Option<usize>,
    pub outputs: Option<Vec<String>>,
}

impl Layer {
    pub fn over(self, base: Layer) -> Layer {
        Layer {
            alpha: self.alpha.or(base.alpha),
            beta: self.beta.or(base.beta),
            p: self.p.or(base.p),
            capacity: self.capacity.or(base.capacity),
            scheme: self.scheme.or(base.scheme),
            h: self.h.or(base.h),
            t_end: self.t_end.or(base.t_end),
            sigma: self.sigma.or(base.sigma),
            d0: self.d0.or(base.d0),
            l0: self.l0.or(base.l0),
            corrector_passes: self.corrector_passes.or(base.corrector_passes),
            outputs: self.outputs.or(base.outputs),
        }
    }

    pub fn params(&self) -> Result<Params, CliError> {
        build_params(
            self.alpha.unwrap_or(DEFAULT_ALPHA),
            self.beta.unwrap_or(DEFAULT_BETA),
            self.p.unwrap_or(DEFAULT_P),
            self.capacity.unwrap_or(DEFAULT_CAPACITY),
        )
    }

    pub fn scheme(&self) -> Result<Scheme, CliError> {
        match &self.scheme {
            Some(s) => s.parse().map_err(|_| {
                CliError::Config(format!("unknown scheme '{s}', expected reference, euler, mickens or fractional"))
            }),
            None => Ok(Scheme::Reference),
        }
    }

    pub fn run_config(&self) -> Result<RunConfig<f64>, CliError> {
        let h = self.h.unwrap_or(DEFAULT_H);
        let t_end = self.t_end.unwrap_or(DEFAULT_T_END);
        let cfg = match self.scheme()? {
            Scheme::Fractional => {
                let cfg = FractionalConfig::new(self.sigma.unwrap_or(DEFAULT_SIGMA), h, t_end)
                    .and_then(|c| c.with_corrector_passes(self.corrector_passes.unwrap_or(1)));
                RunConfig::Fractional(cfg.map_err(|e| CliError::Config(e.to_string()))?)
            }
            scheme => RunConfig::Classical(
                SchemeConfig::new(scheme, h, t_end).map_err(|e| CliError::Config(e.to_string()))?,
            ),
        };
        Ok(cfg)
    }

    pub fn initial(&self) -> Result<Point, CliError> {
        let s = Point::new(self.d0.unwrap_or(DEFAULT_D0), self.l0.unwrap_or(DEFAULT_L0));
        if !(s.d.is_finite() && s.l.is_finite() && s.d >= 0.0 && s.l >= 0.0) {
            return Err(CliError::Config(format!(
                "initial populations must be finite and non-negative, got ({}, {})",
                s.d, s.l
            )));
        }
        Ok(s)
    }

    pub fn outputs(&self) -> Result<Outputs, CliError> {
        match &self.outputs {
            Some(names) => Outputs::from_names(names),
            None => Ok(Outputs::default()),
        }
    }

    pub fn scenario(&self, name: Option<String>) -> Result<Scenario, CliError> {
        let run = self.run_config()?;
        Ok(Scenario {
            name: name.unwrap_or_else(|| run.scheme().name().to_string()),
            params: self.params()?,
            initial: self.initial()?,
            run,
            outputs: self.outputs()?,
        })
    }
}

/// Checked parameters when they satisfy `0 < α < β < pC < 1`, otherwise
/// unchecked ones (still required to be positive and finite).
pub fn build_params(alpha: f64, beta: f64, p: f64, capacity: f64) -> Result<Params, CliError> {
    if let Ok(params) = Params::new(alpha, beta, p, capacity) {
        return Ok(params);
    }
    let all = [alpha, beta, p, capacity];
    if all.iter().any(|x| !x.is_finite() || *x < 0.0) || capacity == 0.0 {
        return Err(CliError::Config(format!(
            "parameters must be finite and non-negative with positive capacity, got \
             alpha={alpha}, beta={beta}, p={p}, capacity={capacity}"
        )));
    }
    Ok(Params::unchecked(alpha, beta, p, capacity))
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub p: Option<f64>,
    pub capacity: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    pub scheme: Option<String>,
    pub h: Option<f64>,
    pub t_end: Option<f64>,
    pub sigma: Option<f64>,
    pub d0: Option<f64>,
    pub l0: Option<f64>,
    pub corrector_passes: Option<usize>,
    pub output: Option<PathBuf>,
    pub outputs: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioEntry {
    pub name: String,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub p: Option<f64>,
    pub capacity: Option<f64>,
    pub scheme: Option<String>,
    pub h: Option<f64>,
    pub t_end: Option<f64>,
    pub sigma: Option<f64>,
    pub d0: Option<f64>,
    pub l0: Option<f64>,
    pub corrector_passes: Option<usize>,
    pub outputs: Option<Vec<String>>,
}

impl ScenarioEntry {
    fn layer(&self) -> Layer {
        Layer {
            alpha: self.alpha,
            beta: self.beta,
            p: self.p,
            capacity: self.capacity,
            scheme: self.scheme.clone(),
            h: self.h,
            t_end: self.t_end,
            sigma: self.sigma,
            d0: self.d0,
            l0: self.l0,
            corrector_passes: self.corrector_passes,
            outputs: self.outputs.clone(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(default)]
    pub model: ModelSection,
    #[serde(default)]
    pub run: RunSection,
    pub scenario: Option<Vec<ScenarioEntry>>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// `[model]` and `[run]` as one layer.
    pub fn base(&self) -> Layer {
        let (m, r) = (&self.model, &self.run);
        Layer {
            alpha: m.alpha,
            beta: m.beta,
            p: m.p,
            capacity: m.capacity,
            scheme: r.scheme.clone(),
            h: r.h,
            t_end: r.t_end,
            sigma: r.sigma,
            d0: r.d0,
            l0: r.l0,
            corrector_passes: r.corrector_passes,
            outputs: r.outputs.clone(),
        }
    }

    /// Scenarios described by the file with `flags` applied on top.
    pub fn scenarios(&self, flags: &Layer) -> Result<Vec<Scenario>, CliError> {
        let base = self.base();
        match &self.scenario {
            None => Ok(vec![flags.clone().over(base).scenario(None)?]),
            Some(entries) => entries
                .iter()
                .map(|e| {
                    flags
                        .clone()
                        .over(e.layer().over(base.clone()))
                        .scenario(Some(e.name.clone()))
                        .map_err(|err| match err {
                            CliError::Config(msg) => CliError::Config(format!("scenario '{}': {msg}", e.name)),
                            other => other,
                        })
                })
                .collect(),
        }
    }
}
