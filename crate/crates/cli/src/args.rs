use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::Layer;

#[derive(Debug, Parser)]
#[command(
    name = "predprey",
    version,
    about = "Logistic predator-prey model: continuous, Euler, Mickens and Caputo fractional solvers",
    allow_negative_numbers = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub opts: Opts,
}

/// Model and run flags shared by every subcommand. Each overrides the
/// corresponding config file value.
#[derive(Debug, Clone, Default, Args)]
pub struct Opts {
    /// Prey growth rate
    #[arg(long, global = true)]
    pub alpha: Option<f64>,
    /// Predator decay rate
    #[arg(long, global = true)]
    pub beta: Option<f64>,
    /// Predation rate
    #[arg(long = "p", global = true)]
    pub p: Option<f64>,
    /// Prey carrying capacity
    #[arg(long, global = true)]
    pub capacity: Option<f64>,
    /// Initial prey population
    #[arg(long, global = true)]
    pub d0: Option<f64>,
    /// Initial predator population
    #[arg(long, global = true)]
    pub l0: Option<f64>,
    /// reference | euler | mickens | fractional
    #[arg(long, global = true)]
    pub scheme: Option<String>,
    /// Step size
    #[arg(long = "h", global = true)]
    pub h: Option<f64>,
    /// Final time
    #[arg(long = "t-end", global = true)]
    pub t_end: Option<f64>,
    /// Fractional order in (0, 1]
    #[arg(long, global = true)]
    pub sigma: Option<f64>,
    /// Output directory
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Exit with status 1 when a run breaks an invariant
    #[arg(long, global = true)]
    pub strict: bool,
    /// TOML configuration file
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

impl Opts {
    pub fn layer(&self) -> Layer {
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
            corrector_passes: None,
            outputs: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    H,
    Sigma,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the configured scenarios and write one CSV each plus a gnuplot script
    Simulate,
    /// Classify the equilibria for the configured scheme
    Stability,
    /// Solve the configured scenarios and check positivity and region bounds
    Verify,
    /// Distances between two CSV files, or between the configured run and another scheme
    Compare {
        /// First CSV file
        a: Option<PathBuf>,
        /// Second CSV file
        b: Option<PathBuf>,
        /// Scheme to compare the configured run against when no files are given
        #[arg(long, default_value = "reference")]
        against: String,
    },
    /// Repeat the configured run over several step sizes or orders
    Sweep {
        #[arg(long, value_enum)]
        over: Axis,
        /// Comma-separated values
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<f64>,
    },
    /// Write the scenario set for one of figure2 .. figure10, or all
    Figures { preset: String },
}
