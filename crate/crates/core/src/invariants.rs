//! Pointwise checks of the positivity and feasible-region theorems.
//!
//! Bounds that the theorems state as limits (`limsup W ≤ B`) are enforced
//! as `W ≤ max(B, W(0)) + tol` on every state: the total population moves
//! monotonically from `W(0)` toward the bound, so the larger of the two is
//! a valid pointwise ceiling.

use crate::classical::{euler_h1_holds, MickensAux};
use crate::error::{Error, Result};
use crate::fractional::{fractional_conservation_bound, scale_constant};
use crate::model::{ModelParams, State};
use crate::scalar::Real;
use crate::trajectory::{Scheme, Trajectory};

/// Slack on feasible-region bounds.
pub const REGION_TOL: f64 = 1e-9;
/// Slack on `D ≥ 0`, `L ≥ 0`.
pub const NEGATIVITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// `D ≤ M`, `D + L ≤ ((α + 4β)/(4β))·M`.
    ContinuousOmega,
    /// `D + L ≤ C` (limit), plus `D + L ≤ (1 + αh)/(ph)`.
    EulerOmega,
    /// `D ≤ 1`, `D + L ≤ (4α² + ξβ²)/(4αβ)` (limit), `C = 1` only.
    MickensOmega,
    /// `D + L ≤ W(0) + A/β`.
    FractionalOmega,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionSpec<T> {
    pub scheme: Scheme,
    pub bound_kind: BoundKind,
    /// Bound on the total population `W = D + L`.
    pub numeric_bound: T,
    /// Bound on the prey population, where the theorem gives one.
    pub d_bound: Option<T>,
    /// Euler only: `(1 + αh)/(ph)`, the ceiling on `W` under which the next
    /// prey value stays non-negative.
    pub aux_bound: Option<T>,
    pub tolerance: T,
}

impl<T: Real> RegionSpec<T> {
    pub fn with_tolerance(mut self, tolerance: T) -> Self {
        self.tolerance = tolerance;
        self
    }
}

fn require_ordering<T: Real>(params: &ModelParams<T>) -> Result<()> {
    if params.satisfies_ordering() {
        Ok(())
    } else {
        Err(Error::Domain("feasible regions need 0 < alpha < beta < p*C < 1".into()))
    }
}

pub fn continuous_region<T: Real>(params: &ModelParams<T>, s0: State<T>) -> Result<RegionSpec<T>> {
    require_ordering(params)?;
    let m = scale_constant(params, s0);
    let (alpha, beta) = (params.alpha(), params.beta());
    Ok(RegionSpec {
        scheme: Scheme::Reference,
        bound_kind: BoundKind::ContinuousOmega,
        numeric_bound: (alpha + T::four() * beta) / (T::four() * beta) * m,
        d_bound: Some(m),
        aux_bound: None,
        tolerance: T::lit(REGION_TOL),
    })
}

pub fn euler_region<T: Real>(params: &ModelParams<T>, h: T) -> Result<RegionSpec<T>> {
    require_ordering(params)?;
    if !euler_h1_holds(params, h) {
        return Err(Error::Config(format!(
            "H1 requires 1 - beta*h > 0, got {}",
            T::one() - params.beta() * h
        )));
    }
    Ok(RegionSpec {
        scheme: Scheme::Euler,
        bound_kind: BoundKind::EulerOmega,
        numeric_bound: params.capacity(),
        d_bound: None,
        aux_bound: Some(euler_aux_bound(params, h)),
        tolerance: T::lit(REGION_TOL),
    })
}

/// `(1 + αh)/(ph)`.
pub fn euler_aux_bound<T: Real>(params: &ModelParams<T>, h: T) -> T {
    (T::one() + params.alpha() * h) / (params.p() * h)
}

/// Whether `(1 + αh)/(ph) ≥ C`. This is not implied by the ordering
/// hypothesis and H1 alone: with `α=0.05, β=0.3, p=0.4, C=1` it fails for
/// `h ∈ (1/(pC − α), 1/β)`.
pub fn euler_aux_dominates_capacity<T: Real>(params: &ModelParams<T>, h: T) -> bool {
    euler_aux_bound(params, h) >= params.capacity()
}

pub fn mickens_region<T: Real>(params: &ModelParams<T>, h: T) -> Result<RegionSpec<T>> {
    require_ordering(params)?;
    if params.capacity() != T::one() {
        return Err(Error::Unsupported(format!(
            "the Mickens region is only established for C = 1, got C = {}",
            params.capacity()
        )));
    }
    let xi = MickensAux::new(params, h).xi;
    let (alpha, beta) = (params.alpha(), params.beta());
    Ok(RegionSpec {
        scheme: Scheme::Mickens,
        bound_kind: BoundKind::MickensOmega,
        numeric_bound: (T::four() * alpha * alpha + xi * beta * beta) / (T::four() * alpha * beta),
        d_bound: Some(T::one()),
        aux_bound: None,
        tolerance: T::lit(REGION_TOL),
    })
}

pub fn fractional_region<T: Real>(params: &ModelParams<T>, s0: State<T>) -> Result<RegionSpec<T>> {
    require_ordering(params)?;
    let bound = fractional_conservation_bound(params, s0.total(), scale_constant(params, s0));
    Ok(RegionSpec {
        scheme: Scheme::Fractional,
        bound_kind: BoundKind::FractionalOmega,
        numeric_bound: bound.bound,
        d_bound: None,
        aux_bound: None,
        tolerance: T::lit(REGION_TOL),
    })
}

/// Region matching the trajectory's scheme, built from its own parameters,
/// step size and initial state.
pub fn region_for<T: Real>(traj: &Trajectory<T>) -> Result<RegionSpec<T>> {
    let (params, s0, h) = (&traj.params, traj.initial(), traj.config.h());
    match traj.scheme {
        Scheme::Reference => continuous_region(params, s0),
        Scheme::Euler => euler_region(params, h),
        Scheme::Mickens => mickens_region(params, h),
        Scheme::Fractional => fractional_region(params, s0),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ViolationReport<T> {
    pub trajectory_id: String,
    /// `None` iff every state passed.
    pub first_violation_index: Option<usize>,
    pub violated_quantity: Option<String>,
    pub observed: Option<T>,
    pub bound: Option<T>,
}

impl<T> ViolationReport<T> {
    pub fn is_clean(&self) -> bool {
        self.first_violation_index.is_none()
    }
}

/// Scans every state for non-negativity and region membership, reporting
/// the first failure.
pub fn check_trajectory<T: Real>(traj: &Trajectory<T>, region: &RegionSpec<T>) -> Result<ViolationReport<T>> {
    if traj.scheme != region.scheme {
        return Err(Error::Usage(format!(
            "region for {} applied to a {} trajectory",
            region.scheme, traj.scheme
        )));
    }
    let neg_tol = -T::lit(NEGATIVITY_TOL);
    let s0 = traj.initial();
    let w_ceiling = region.numeric_bound.max(s0.total());
    let d_ceiling = region.d_bound.map(|b| b.max(s0.d));

    let mut report = ViolationReport {
        trajectory_id: traj.label.clone(),
        first_violation_index: None,
        violated_quantity: None,
        observed: None,
        bound: None,
    };
    for (i, s) in traj.states.iter().enumerate() {
        let w = s.total();
        let failure = if !(s.d >= neg_tol) {
            Some(("D >= 0", s.d, T::zero()))
        } else if !(s.l >= neg_tol) {
            Some(("L >= 0", s.l, T::zero()))
        } else if let Some(dc) = d_ceiling.filter(|&dc| !(s.d <= dc + region.tolerance)) {
            Some(("D <= D-bound", s.d, dc))
        } else if !(w <= w_ceiling + region.tolerance) {
            Some(("D + L <= W-bound", w, w_ceiling))
        } else if let Some(aux) = region.aux_bound.filter(|&aux| !(w <= aux + region.tolerance)) {
            Some(("D + L <= (1 + alpha h)/(p h)", w, aux))
        } else {
            None
        };
        if let Some((quantity, observed, bound)) = failure {
            report.first_violation_index = Some(i);
            report.violated_quantity = Some(quantity.to_string());
            report.observed = Some(observed);
            report.bound = Some(bound);
            break;
        }
    }
    Ok(report)
}
