//! Scheme identifiers, run configurations and time-indexed trajectories.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{ModelParams, State};
use crate::scalar::Real;

/// Which formulation produced a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Fixed-step RK4 on the continuous system.
    Reference,
    Euler,
    Mickens,
    /// Caputo fractional system, product-trapezoidal predictor-corrector.
    Fractional,
}

impl Scheme {
    pub const ALL: [Scheme; 4] = [Self::Reference, Self::Euler, Self::Mickens, Self::Fractional];

    pub fn name(self) -> &'static str {
        match self {
            Self::Reference => "reference",
            Self::Euler => "euler",
            Self::Mickens => "mickens",
            Self::Fractional => "fractional",
        }
    }

    pub fn is_discrete(self) -> bool {
        matches!(self, Self::Euler | Self::Mickens)
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "reference" | "continuous" | "rk4" => Ok(Self::Reference),
            "euler" => Ok(Self::Euler),
            "mickens" | "nsfd" => Ok(Self::Mickens),
            "fractional" | "caputo" => Ok(Self::Fractional),
            other => Err(Error::Usage(format!("unknown scheme '{other}'"))),
        }
    }
}

/// Step size and horizon for the reference, Euler and Mickens drivers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeConfig<T> {
    pub h: T,
    pub t_end: T,
    pub scheme: Scheme,
}

impl<T: Real> SchemeConfig<T> {
    pub fn new(scheme: Scheme, h: T, t_end: T) -> Result<Self> {
        let cfg = Self { h, t_end, scheme };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.scheme == Scheme::Fractional {
            return Err(Error::Config(
                "fractional runs take a FractionalConfig, not a SchemeConfig".into(),
            ));
        }
        validate_grid(self.h, self.t_end)
    }

    pub fn steps(&self) -> usize {
        step_count(self.h, self.t_end)
    }
}

/// Order, step and horizon for the Caputo solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalConfig<T> {
    /// Derivative order σ ∈ (0, 1].
    pub sigma: T,
    pub h: T,
    pub t_end: T,
    /// Corrector applications per step (≥ 1).
    pub corrector_passes: usize,
}

impl<T: Real> FractionalConfig<T> {
    pub fn new(sigma: T, h: T, t_end: T) -> Result<Self> {
        let cfg = Self {
            sigma,
            h,
            t_end,
            corrector_passes: 1,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_corrector_passes(mut self, passes: usize) -> Result<Self> {
        self.corrector_passes = passes;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma > T::zero() && self.sigma <= T::one()) {
            return Err(Error::Domain(format!(
                "fractional order must lie in (0, 1], got {}",
                self.sigma
            )));
        }
        if self.corrector_passes == 0 {
            return Err(Error::Config("corrector_passes must be at least 1".into()));
        }
        validate_grid(self.h, self.t_end)
    }

    pub fn steps(&self) -> usize {
        step_count(self.h, self.t_end)
    }
}

fn validate_grid<T: Real>(h: T, t_end: T) -> Result<()> {
    if !(h.is_finite() && h > T::zero()) {
        return Err(Error::Config(format!("step size must be positive and finite, got {h}")));
    }
    if !(t_end.is_finite() && t_end >= h) {
        return Err(Error::Config(format!(
            "horizon must be finite and at least one step (h = {h}), got {t_end}"
        )));
    }
    Ok(())
}

/// `⌈t_end / h⌉`, treating ratios within 1e-9 of an integer as exact.
pub fn step_count<T: Real>(h: T, t_end: T) -> usize {
    let ratio = (t_end / h).to_f64_lossy();
    let nearest = ratio.round();
    let n = if (ratio - nearest).abs() <= 1e-9 * nearest.max(1.0) {
        nearest
    } else {
        ratio.ceil()
    };
    (n as usize).max(1)
}

/// Configuration a trajectory was produced with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RunConfig<T> {
    Classical(SchemeConfig<T>),
    Fractional(FractionalConfig<T>),
}

impl<T: Real> RunConfig<T> {
    pub fn scheme(&self) -> Scheme {
        match self {
            Self::Classical(c) => c.scheme,
            Self::Fractional(_) => Scheme::Fractional,
        }
    }

    pub fn h(&self) -> T {
        match self {
            Self::Classical(c) => c.h,
            Self::Fractional(c) => c.h,
        }
    }

    pub fn t_end(&self) -> T {
        match self {
            Self::Classical(c) => c.t_end,
            Self::Fractional(c) => c.t_end,
        }
    }

    pub fn sigma(&self) -> Option<T> {
        match self {
            Self::Classical(_) => None,
            Self::Fractional(c) => Some(c.sigma),
        }
    }
}

/// States on a strictly increasing time grid, with provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    pub times: Vec<T>,
    pub states: Vec<State<T>>,
    pub scheme: Scheme,
    pub params: ModelParams<T>,
    pub config: RunConfig<T>,
    /// Free-form identifier used in reports; defaults to the scheme name.
    pub label: String,
    /// Hypothesis violations noticed while producing the run (e.g. H1).
    pub warnings: Vec<String>,
}

impl<T: Real> Trajectory<T> {
    pub fn new(
        times: Vec<T>,
        states: Vec<State<T>>,
        params: ModelParams<T>,
        config: RunConfig<T>,
    ) -> Result<Self> {
        if times.is_empty() || times.len() != states.len() {
            return Err(Error::Usage(format!(
                "trajectory needs matching non-empty grids ({} times, {} states)",
                times.len(),
                states.len()
            )));
        }
        if let Some(i) = times.windows(2).position(|w| !(w[1] > w[0])) {
            return Err(Error::Usage(format!("times not strictly increasing at index {}", i + 1)));
        }
        Ok(Self {
            times,
            states,
            scheme: config.scheme(),
            label: config.scheme().name().to_string(),
            params,
            config,
            warnings: Vec::new(),
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn initial(&self) -> State<T> {
        self.states[0]
    }

    pub fn last(&self) -> State<T> {
        *self.states.last().expect("trajectory is never empty")
    }

    pub fn final_time(&self) -> T {
        *self.times.last().expect("trajectory is never empty")
    }

    pub fn iter(&self) -> impl Iterator<Item = (T, State<T>)> + '_ {
        self.times.iter().copied().zip(self.states.iter().copied())
    }
}

/// Uniform grid `t_i = i·h`, `i = 0..=n`.
pub(crate) fn uniform_grid<T: Real>(h: T, n: usize) -> Vec<T> {
    (0..=n).map(|i| T::from_usize_lossy(i) * h).collect()
}
