//! Logistic predator-prey model
//!
//! ```text
//! dD/dt = αD(1 − D/C) − pDL
//! dL/dt = pDL − βL
//! ```
//!
//! solved four ways (fixed-step RK4, explicit Euler, the Mickens
//! nonstandard finite-difference scheme, and a Caputo fractional
//! predictor-corrector) together with equilibrium classification and
//! executable checks of positivity and conservation bounds.
//!
//! All numerics are generic over the scalar type. Field-only operations
//! (vector field, equilibria, Euler map, Jacobians, stability predicates)
//! accept exact rationals; solvers need a floating-point [`Real`].

pub mod classical;
pub mod error;
pub mod fractional;
pub mod invariants;
pub mod model;
pub mod scalar;
pub mod special;
pub mod stability;
pub mod trajectory;

pub use classical::{euler_step, iterate, mickens_step, reference_solve, MickensAux};
pub use error::{Error, Result};
pub use fractional::{caputo_solve, fractional_conservation_bound, scalar_caputo_solve, QuadratureWeights};
pub use invariants::{check_trajectory, RegionSpec, ViolationReport};
pub use model::{equilibria, lipschitz_growth_bound, vector_field, Equilibrium, EquilibriumLabel, ModelParams, State};
pub use scalar::{Real, Scalar};
pub use special::MLSeriesConfig;
pub use stability::{classify, Classification, Quadratic, StabilityReport};
pub use trajectory::{FractionalConfig, RunConfig, Scheme, SchemeConfig, Trajectory};

/// Exact rational scalar used for closed-form checks.
pub type Rational = num_rational::Rational64;

pub type Params = ModelParams<f64>;
pub type Params32 = ModelParams<f32>;
pub type ExactParams = ModelParams<Rational>;

pub type Point = State<f64>;
pub type Point32 = State<f32>;
pub type ExactPoint = State<Rational>;

pub type Trajectory64 = Trajectory<f64>;
pub type Trajectory32 = Trajectory<f32>;
