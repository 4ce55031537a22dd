//! Local stability of E1, E2, E3 under each formulation.
//!
//! Continuous and fractional equilibria go through Routh-Hurwitz on the
//! characteristic polynomial of the Jacobian; the Euler and Mickens maps go
//! through the Schur-Cohn conditions `P(1) > 0`, `P(−1) > 0`, `|P(0)| < 1`.
//! The fractional system is classified exactly like the continuous one. The
//! Matignon condition `|arg λ| > σπ/2` would be a weaker requirement on the
//! eigenvalues and is not applied.

use num_complex::Complex;

use crate::classical::denominator;
use crate::error::{Error, Result};
use crate::model::{equilibria, Equilibrium, EquilibriumLabel, ModelParams, State};
use crate::scalar::{Real, Scalar};
use crate::trajectory::Scheme;

/// Row-major 2×2 matrix.
pub type Matrix2<T> = [[T; 2]; 2];

/// Predicates closer than this to their threshold are treated as undecided.
pub const CRITERION_TOL: f64 = 1e-9;

/// `c2·λ² + c1·λ + c0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadratic<T> {
    pub c2: T,
    pub c1: T,
    pub c0: T,
}

impl<T: Scalar> Quadratic<T> {
    pub fn new(c2: T, c1: T, c0: T) -> Self {
        Self { c2, c1, c0 }
    }

    /// `det(J − λI) = λ² − tr(J)λ + det(J)`.
    pub fn characteristic(j: &Matrix2<T>) -> Self {
        Self::new(T::one(), -trace(j), det(j))
    }

    pub fn eval(&self, x: T) -> T {
        (self.c2 * x + self.c1) * x + self.c0
    }

    /// Divides through by `c2`.
    pub fn monic(&self) -> Result<Self> {
        if self.c2 == T::zero() {
            return Err(Error::Degenerate("leading coefficient is zero".into()));
        }
        Ok(Self::new(T::one(), self.c1 / self.c2, self.c0 / self.c2))
    }
}

impl<T: Real> Quadratic<T> {
    /// Both roots, real ones computed without cancellation.
    pub fn roots(&self) -> Result<[Complex<T>; 2]> {
        let q = self.monic()?;
        let (b, c) = (q.c1, q.c0);
        let half = T::lit(0.5);
        let disc = b * b - T::four() * c;
        if disc >= T::zero() {
            let s = disc.sqrt();
            let big = -half * (b + if b >= T::zero() { s } else { -s });
            let other = if big == T::zero() { T::zero() } else { c / big };
            Ok([Complex::new(big, T::zero()), Complex::new(other, T::zero())])
        } else {
            let im = half * (-disc).sqrt();
            let re = -half * b;
            Ok([Complex::new(re, im), Complex::new(re, -im)])
        }
    }
}

pub fn trace<T: Scalar>(j: &Matrix2<T>) -> T {
    j[0][0] + j[1][1]
}

pub fn det<T: Scalar>(j: &Matrix2<T>) -> T {
    j[0][0] * j[1][1] - j[0][1] * j[1][0]
}

/// Eigenvalues; read off the diagonal exactly for triangular matrices.
pub fn eigenvalues<T: Real>(j: &Matrix2<T>) -> Result<[Complex<T>; 2]> {
    if j[0][1] == T::zero() || j[1][0] == T::zero() {
        return Ok([Complex::new(j[0][0], T::zero()), Complex::new(j[1][1], T::zero())]);
    }
    Quadratic::characteristic(j).roots()
}

/// Jacobian of the continuous field:
/// `[[α(1 − 2D/C) − pL, −pD], [pL, pD − β]]`.
pub fn jacobian_continuous<T: Scalar>(params: &ModelParams<T>, s: State<T>) -> Matrix2<T> {
    let (alpha, beta, p, c) = (params.alpha(), params.beta(), params.p(), params.capacity());
    [
        [alpha * (T::one() - T::two() * s.d / c) - p * s.l, -p * s.d],
        [p * s.l, p * s.d - beta],
    ]
}

/// Jacobian of the Euler map, `I + h·J`.
pub fn jacobian_euler<T: Scalar>(params: &ModelParams<T>, h: T, s: State<T>) -> Matrix2<T> {
    let j = jacobian_continuous(params, s);
    [
        [T::one() + h * j[0][0], h * j[0][1]],
        [h * j[1][0], T::one() + h * j[1][1]],
    ]
}

/// Jacobian of the Mickens map (with the sequential `D'` → `L'` update).
pub fn jacobian_mickens<T: Real>(params: &ModelParams<T>, h: T, s: State<T>) -> Matrix2<T> {
    let phi = denominator(params.beta(), h);
    let one = T::one();
    let (alpha, beta, p, c) = (params.alpha(), params.beta(), params.p(), params.capacity());
    let growth = one + alpha * phi;
    let decay = one + beta * phi;
    let q = one + p * phi * s.l + alpha * phi * s.d / c;
    let q2 = q * q;
    let dd_dd = growth * (one + p * phi * s.l) / q2;
    let dd_dl = -growth * p * phi * s.d / q2;
    [
        [dd_dd, dd_dl],
        [
            p * phi * s.l * dd_dd / decay,
            (one + p * phi * growth * s.d * (one + alpha * phi * s.d / c) / q2) / decay,
        ],
    ]
}

/// Routh-Hurwitz outcome for a quadratic, after normalization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RouthHurwitz<T> {
    pub c1: T,
    pub c0: T,
    /// Both roots in the open left half-plane.
    pub stable: bool,
}

pub fn routh_hurwitz_quadratic<T: Scalar>(q: &Quadratic<T>) -> Result<RouthHurwitz<T>> {
    let m = q.monic()?;
    Ok(RouthHurwitz {
        c1: m.c1,
        c0: m.c0,
        stable: m.c1 > T::zero() && m.c0 > T::zero(),
    })
}

/// Schur-Cohn outcome for a quadratic, after normalization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchurCohn<T> {
    pub p_one: T,
    pub p_minus_one: T,
    pub p_zero: T,
    /// Both roots strictly inside the unit circle.
    pub stable: bool,
}

pub fn schur_cohn_quadratic<T: Scalar>(q: &Quadratic<T>) -> Result<SchurCohn<T>> {
    let m = q.monic()?;
    let p_one = m.eval(T::one());
    let p_minus_one = m.eval(-T::one());
    let p_zero = m.c0;
    Ok(SchurCohn {
        p_one,
        p_minus_one,
        p_zero,
        stable: p_one > T::zero() && p_minus_one > T::zero() && p_zero.abs_val() < T::one(),
    })
}

/// Largest Euler step keeping E3 a sink: `h₂ = 1/(pC − β)`.
pub fn euler_step_bound<T: Scalar>(params: &ModelParams<T>) -> Result<T> {
    let gap = params.p() * params.capacity() - params.beta();
    if gap <= T::zero() {
        return Err(Error::Domain("p*C <= beta: coexistence point does not exist".into()));
    }
    Ok(T::one() / gap)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Saddle,
    Sink,
    Source,
    NonHyperbolic,
    OutOfCriterion,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Saddle => "saddle",
            Self::Sink => "sink",
            Self::Source => "source",
            Self::NonHyperbolic => "non-hyperbolic",
            Self::OutOfCriterion => "out-of-criterion",
        })
    }
}

/// One named predicate of a stability criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct Criterion<T> {
    pub name: &'static str,
    pub value: T,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport<T> {
    pub equilibrium: Equilibrium<T>,
    pub scheme: Scheme,
    pub jacobian: Option<Matrix2<T>>,
    pub char_poly: Option<Quadratic<T>>,
    pub eigenvalues: Option<[Complex<T>; 2]>,
    pub classification: Classification,
    pub criterion_details: Vec<Criterion<T>>,
    /// Euler at E3: the step bound `h₂`.
    pub step_bound: Option<T>,
}

/// Classifies E1, E2, E3 for `scheme`. `scheme_param` is the step size for
/// Euler and Mickens, σ for the fractional system, and ignored for the
/// reference system.
pub fn classify<T: Real>(
    params: &ModelParams<T>,
    scheme: Scheme,
    scheme_param: T,
) -> Result<Vec<StabilityReport<T>>> {
    match scheme {
        Scheme::Euler | Scheme::Mickens if !(scheme_param > T::zero() && scheme_param.is_finite()) => {
            return Err(Error::Domain(format!("step size must be positive, got {scheme_param}")));
        }
        Scheme::Fractional if !(scheme_param > T::zero() && scheme_param <= T::one()) => {
            return Err(Error::Domain(format!("fractional order must lie in (0, 1], got {scheme_param}")));
        }
        _ => {}
    }
    Ok(equilibria(params)
        .into_iter()
        .map(|eq| classify_one(params, scheme, scheme_param, eq))
        .collect())
}

fn classify_one<T: Real>(
    params: &ModelParams<T>,
    scheme: Scheme,
    h: T,
    equilibrium: Equilibrium<T>,
) -> StabilityReport<T> {
    let mut report = StabilityReport {
        equilibrium: equilibrium.clone(),
        scheme,
        jacobian: None,
        char_poly: None,
        eigenvalues: None,
        classification: Classification::OutOfCriterion,
        criterion_details: Vec::new(),
        step_bound: None,
    };
    let Some(point) = equilibrium.point else {
        return report;
    };
    let jac = match scheme {
        Scheme::Reference | Scheme::Fractional => jacobian_continuous(params, point),
        Scheme::Euler => jacobian_euler(params, h, point),
        Scheme::Mickens => jacobian_mickens(params, h, point),
    };
    report.jacobian = Some(jac);
    if jac.iter().flatten().any(|x| !x.is_finite()) {
        return report;
    }
    let poly = Quadratic::characteristic(&jac);
    report.char_poly = Some(poly);
    let Ok(eigs) = eigenvalues(&jac) else {
        return report;
    };
    report.eigenvalues = Some(eigs);
    if scheme == Scheme::Euler && equilibrium.label == EquilibriumLabel::E3 {
        report.step_bound = euler_step_bound(params).ok();
    }

    let tol = T::lit(CRITERION_TOL);
    let near = |x: T| x.abs() <= tol;
    report.classification = if scheme.is_discrete() {
        let Ok(sc) = schur_cohn_quadratic(&poly) else {
            return report;
        };
        report.criterion_details = vec![
            Criterion { name: "P(1) > 0", value: sc.p_one, holds: sc.p_one > T::zero() },
            Criterion { name: "P(-1) > 0", value: sc.p_minus_one, holds: sc.p_minus_one > T::zero() },
            Criterion { name: "|P(0)| < 1", value: sc.p_zero, holds: sc.p_zero.abs() < T::one() },
        ];
        let complex_pair = eigs[0].im != T::zero();
        if near(sc.p_one) || near(sc.p_minus_one) || (complex_pair && near(T::one() - sc.p_zero.abs())) {
            Classification::NonHyperbolic
        } else {
            let outside = eigs.iter().filter(|z| z.norm() > T::one()).count();
            by_count(sc.stable, outside)
        }
    } else {
        let Ok(rh) = routh_hurwitz_quadratic(&poly) else {
            return report;
        };
        report.criterion_details = vec![
            Criterion { name: "c1 > 0", value: rh.c1, holds: rh.c1 > T::zero() },
            Criterion { name: "c0 > 0", value: rh.c0, holds: rh.c0 > T::zero() },
        ];
        if near(rh.c0) || (near(rh.c1) && rh.c0 > T::zero()) {
            Classification::NonHyperbolic
        } else {
            let unstable = eigs.iter().filter(|z| z.re > T::zero()).count();
            by_count(rh.stable, unstable)
        }
    };
    report
}

fn by_count(stable: bool, unstable_roots: usize) -> Classification {
    match (stable, unstable_roots) {
        (true, 0) => Classification::Sink,
        (false, 1) => Classification::Saddle,
        (false, 2) => Classification::Source,
        _ => Classification::OutOfCriterion,
    }
}
