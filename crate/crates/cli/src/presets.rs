//! Scenario sets for the standard figures: `α = 0.05, β = 0.3, p = 0.4,
//! C = 1`, `h = 0.25`, `t ∈ [0, 300]`, `σ = 0.95` unless stated.

use predprey::{FractionalConfig, Params, Point, RunConfig, Scheme, SchemeConfig};

use crate::config::{DEFAULT_ALPHA, DEFAULT_BETA, DEFAULT_CAPACITY, DEFAULT_H, DEFAULT_P, DEFAULT_SIGMA, DEFAULT_T_END};
use crate::error::CliError;
use crate::scenario::{Outputs, Scenario};

pub const PRESETS: [&str; 9] = [
    "figure2", "figure3", "figure4", "figure5", "figure6", "figure7", "figure8", "figure9", "figure10",
];

/// Initial conditions used by the multi-start figures.
pub const INITIAL_CONDITIONS: [(f64, f64); 3] = [(0.2, 0.3), (0.0, 0.5), (0.85, 0.1)];

#[derive(Debug, Clone, Copy)]
enum Run {
    Classical(Scheme),
    Fractional(f64),
}

impl Run {
    fn tag(self) -> String {
        match self {
            Self::Classical(s) => s.name().to_string(),
            Self::Fractional(sigma) => format!("fractional_sigma{sigma:.2}"),
        }
    }

    fn config(self) -> RunConfig<f64> {
        match self {
            Self::Classical(s) => RunConfig::Classical(SchemeConfig::new(s, DEFAULT_H, DEFAULT_T_END).unwrap()),
            Self::Fractional(sigma) => {
                RunConfig::Fractional(FractionalConfig::new(sigma, DEFAULT_H, DEFAULT_T_END).unwrap())
            }
        }
    }
}

fn params() -> Params {
    Params::new(DEFAULT_ALPHA, DEFAULT_BETA, DEFAULT_P, DEFAULT_CAPACITY).unwrap()
}

fn scenario(name: String, run: Run, (d0, l0): (f64, f64)) -> Scenario {
    Scenario {
        name,
        params: params(),
        initial: Point::new(d0, l0),
        run: run.config(),
        outputs: Outputs::default(),
    }
}

/// One scheme from each of the three initial conditions.
fn initial_conditions(preset: &str, run: Run) -> Vec<Scenario> {
    INITIAL_CONDITIONS
        .iter()
        .enumerate()
        .map(|(i, &ic)| scenario(format!("{preset}_{}_ic{}", run.tag(), i + 1), run, ic))
        .collect()
}

/// Several schemes from `(0.2, 0.3)`.
fn schemes(preset: &str, runs: &[Run]) -> Vec<Scenario> {
    runs.iter()
        .map(|&run| scenario(format!("{preset}_{}", run.tag()), run, INITIAL_CONDITIONS[0]))
        .collect()
}

pub fn preset(name: &str) -> Result<Vec<Scenario>, CliError> {
    use Scheme::*;
    let c = Run::Classical;
    let frac = Run::Fractional(DEFAULT_SIGMA);
    Ok(match name {
        "figure2" => initial_conditions(name, c(Reference)),
        "figure3" => initial_conditions(name, c(Euler)),
        "figure4" => initial_conditions(name, c(Mickens)),
        "figure5" => initial_conditions(name, frac),
        "figure6" => schemes(name, &[c(Reference), c(Euler), c(Mickens), frac]),
        "figure7" => schemes(name, &[c(Reference), c(Euler), c(Mickens)]),
        "figure8" => schemes(name, &[c(Reference), c(Euler)]),
        "figure9" => schemes(name, &[c(Reference)]),
        "figure10" => schemes(
            name,
            &[
                Run::Fractional(0.8),
                Run::Fractional(0.9),
                Run::Fractional(0.95),
                Run::Fractional(0.99),
                c(Reference),
            ],
        ),
        other => {
            return Err(CliError::Usage(format!(
                "unknown preset '{other}', expected one of {} or all",
                PRESETS.join(", ")
            )))
        }
    })
}
