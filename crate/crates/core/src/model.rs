//! Model parameters, state, vector field and equilibria.

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

/// Rates and couplings of the logistic predator-prey system.
///
/// `alpha` is the prey growth rate, `beta` the predator decay rate, `p` the
/// interaction rate and `capacity` the prey carrying capacity C.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams<T> {
    alpha: T,
    beta: T,
    p: T,
    capacity: T,
    validated: bool,
}

impl<T: Scalar> ModelParams<T> {
    /// Builds parameters satisfying `0 < alpha < beta < p*capacity < 1`.
    pub fn new(alpha: T, beta: T, p: T, capacity: T) -> Result<Self> {
        let params = Self::unchecked(alpha, beta, p, capacity);
        if !params.all_finite() {
            return Err(Error::Domain("model parameters must be finite".into()));
        }
        if !params.satisfies_ordering() {
            return Err(Error::Domain(format!(
                "parameters violate 0 < alpha < beta < p*C < 1 \
                 (alpha={alpha:?}, beta={beta:?}, p*C={:?})",
                p * capacity
            )));
        }
        Ok(Self {
            validated: true,
            ..params
        })
    }

    /// Builds parameters without the ordering check, for exploring regimes
    /// outside the hypotheses. The result reports `is_validated() == false`.
    pub fn unchecked(alpha: T, beta: T, p: T, capacity: T) -> Self {
        Self {
            alpha,
            beta,
            p,
            capacity,
            validated: false,
        }
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    pub fn p(&self) -> T {
        self.p
    }

    pub fn capacity(&self) -> T {
        self.capacity
    }

    /// Whether the instance came from the checked constructor.
    pub fn is_validated(&self) -> bool {
        self.validated
    }

    /// `0 < alpha < beta < p*C < 1`, regardless of how the value was built.
    pub fn satisfies_ordering(&self) -> bool {
        let pc = self.p * self.capacity;
        T::zero() < self.alpha && self.alpha < self.beta && self.beta < pc && pc < T::one()
    }

    fn all_finite(&self) -> bool {
        self.alpha.finite() && self.beta.finite() && self.p.finite() && self.capacity.finite()
    }
}

/// A prey/predator pair `(d, l)`. Also used for the rate vector
/// `(dD/dt, dL/dt)` returned by [`vector_field`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct State<T> {
    pub d: T,
    pub l: T,
}

impl<T: Scalar> State<T> {
    pub fn new(d: T, l: T) -> Self {
        Self { d, l }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    /// Total population `W = D + L`.
    pub fn total(&self) -> T {
        self.d + self.l
    }

    pub fn is_finite(&self) -> bool {
        self.d.finite() && self.l.finite()
    }

    /// Sup-norm distance `max(|dD|, |dL|)`.
    pub fn sup_dist(&self, other: &Self) -> T {
        (self.d - other.d).abs_val().max_val((self.l - other.l).abs_val())
    }

    pub fn add(self, other: Self) -> Self {
        Self::new(self.d + other.d, self.l + other.l)
    }

    pub fn scale(self, k: T) -> Self {
        Self::new(self.d * k, self.l * k)
    }
}

/// Right-hand side `(αD(1−D/C) − pDL, pDL − βL)`.
pub fn vector_field<T: Scalar>(params: &ModelParams<T>, s: State<T>) -> Result<State<T>> {
    if !s.is_finite() || !params.all_finite() {
        return Err(Error::Domain(format!("non-finite input to vector field: {s:?}")));
    }
    Ok(field_unchecked(params, s))
}

#[inline]
pub(crate) fn field_unchecked<T: Scalar>(params: &ModelParams<T>, s: State<T>) -> State<T> {
    let ModelParams {
        alpha,
        beta,
        p,
        capacity,
        ..
    } = *params;
    let predation = p * s.d * s.l;
    State::new(
        alpha * s.d * (T::one() - s.d / capacity) - predation,
        predation - beta * s.l,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EquilibriumLabel {
    /// Total extinction `(0, 0)`.
    E1,
    /// Predator-free `(C, 0)`.
    E2,
    /// Coexistence `(β/p, (α/p)(1 − β/(pC)))`.
    E3,
}

impl std::fmt::Display for EquilibriumLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::E1 => "E1",
            Self::E2 => "E2",
            Self::E3 => "E3",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Equilibrium<T> {
    pub label: EquilibriumLabel,
    /// `None` only when the coordinates are undefined (E3 with `p = 0`).
    pub point: Option<State<T>>,
    /// E3 requires `1 − β/(pC) > 0`; E1 and E2 always exist.
    pub exists: bool,
    pub reason: Option<String>,
}

impl<T: Scalar> Equilibrium<T> {
    /// The point, if it exists as a non-negative equilibrium.
    pub fn existing_point(&self) -> Option<State<T>> {
        if self.exists {
            self.point
        } else {
            None
        }
    }
}

/// E1, E2, E3 in that order. The same three points are the fixed points of
/// the Euler and Mickens maps and the equilibria of the fractional system.
pub fn equilibria<T: Scalar>(params: &ModelParams<T>) -> Vec<Equilibrium<T>> {
    let (alpha, beta, p, c) = (params.alpha, params.beta, params.p, params.capacity);
    let e1 = Equilibrium {
        label: EquilibriumLabel::E1,
        point: Some(State::zero()),
        exists: true,
        reason: None,
    };
    let e2 = Equilibrium {
        label: EquilibriumLabel::E2,
        point: Some(State::new(c, T::zero())),
        exists: true,
        reason: None,
    };
    let e3 = if p == T::zero() || c == T::zero() {
        Equilibrium {
            label: EquilibriumLabel::E3,
            point: None,
            exists: false,
            reason: Some("p*C = 0: coexistence point undefined".into()),
        }
    } else {
        let margin = T::one() - beta / (p * c);
        let point = State::new(beta / p, alpha / p * margin);
        let exists = margin > T::zero();
        Equilibrium {
            label: EquilibriumLabel::E3,
            point: Some(point),
            exists,
            reason: (!exists).then(|| "beta >= p*C: coexistence point not positive".into()),
        }
    };
    vec![e1, e2, e3]
}

/// Coexistence point E3, when it exists.
pub fn coexistence_point<T: Scalar>(params: &ModelParams<T>) -> Option<State<T>> {
    equilibria(params)
        .into_iter()
        .find(|e| e.label == EquilibriumLabel::E3)
        .and_then(|e| e.existing_point())
}

/// Constants `(w, λ)` with `‖F(X)‖∞ ≤ w + λ‖X‖∞` on the feasible region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthBound<T> {
    pub w: T,
    pub lambda: T,
}

/// Offset used for `w`; any positive value works.
pub const GROWTH_OFFSET: f64 = 1e-9;

/// Splits `F(X) = D·Z·X + B·X` with `Z = [[-α/C, -p], [0, p]]`,
/// `B = diag(α, -β)` and returns `λ = ‖Z‖∞ + ‖B‖∞` (row-sum norms).
pub fn lipschitz_growth_bound<T: Real>(params: &ModelParams<T>) -> GrowthBound<T> {
    let (alpha, beta, p, c) = (params.alpha, params.beta, params.p, params.capacity);
    let z_norm = (alpha / c).abs() + p.abs();
    let z_norm = z_norm.max(p.abs());
    let b_norm = alpha.abs().max(beta.abs());
    GrowthBound {
        w: T::lit(GROWTH_OFFSET),
        lambda: z_norm + b_norm,
    }
}
