use thiserror::Error;

/// Errors raised by the model, solvers and verifiers.
///
/// Numeric payloads are reported as `f64` regardless of the scalar type the
/// computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("range error: {0}")]
    Range(String),

    #[error("series did not converge within {max_terms} terms")]
    IterationLimit { max_terms: usize },

    #[error("series lost precision: largest term {largest_term:e} swamps the sum {sum:e}")]
    PrecisionLoss { largest_term: f64, sum: f64 },

    #[error("non-finite state at step {step} (t = {time})")]
    Divergence { step: usize, time: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
