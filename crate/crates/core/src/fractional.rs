//! Caputo fractional-order solver: fractional rectangle predictor and
//! product-trapezoidal corrector on a uniform grid, full memory.
//!
//! For `ᶜD^σ X = F(X)`, step `n → n+1`:
//!
//! ```text
//! X^P = X₀ + h^σ/Γ(σ+1) · Σ_{j=0..n} b_{n−j} F(X_j)
//! X   = X₀ + h^σ/Γ(σ+2) · (a₀(n) F(X₀) + Σ_{j=1..n} c_{n−j} F(X_j) + F(X^P))
//!
//! b_m   = (m+1)^σ − m^σ
//! a₀(n) = n^{σ+1} − (n−σ)(n+1)^σ
//! c_m   = (m+2)^{σ+1} + m^{σ+1} − 2(m+1)^{σ+1}
//! ```

use crate::error::{Error, Result};
use crate::model::{field_unchecked, ModelParams, State};
use crate::scalar::Real;
use crate::special::{gamma, mittag_leffler, MLSeriesConfig};
use crate::trajectory::{uniform_grid, FractionalConfig, RunConfig, Trajectory};

// Below this ratio the binomial series replaces the direct power difference.
const SERIES_CUTOFF: f64 = 0.25;

/// Product-integration weights for steps `0..n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureWeights<T> {
    pub sigma: T,
    /// `b_m`, m = 0..=n_max.
    pub rectangle: Vec<T>,
    /// Interior corrector weights `c_m`, m = 0..=n_max.
    pub trapezoidal: Vec<T>,
    /// Corrector weight of the initial point, `a₀(n)`, n = 0..=n_max.
    pub endpoint: Vec<T>,
    /// `h^σ/Γ(σ+1)`.
    pub predictor_scale: T,
    /// `h^σ/Γ(σ+2)`.
    pub corrector_scale: T,
}

impl<T: Real> QuadratureWeights<T> {
    pub fn new(sigma: T, h: T, n_max: usize) -> Result<Self> {
        if !(sigma > T::zero() && sigma <= T::one()) {
            return Err(Error::Domain(format!("fractional order must lie in (0, 1], got {sigma}")));
        }
        let hs = h.powf(sigma);
        Ok(Self {
            sigma,
            rectangle: (0..=n_max).map(|m| rectangle_weight(sigma, m)).collect(),
            trapezoidal: (0..=n_max).map(|m| interior_weight(sigma, m)).collect(),
            endpoint: (0..=n_max).map(|n| endpoint_weight(sigma, n)).collect(),
            predictor_scale: hs / gamma(sigma + T::one())?,
            corrector_scale: hs / gamma(sigma + T::two())?,
        })
    }

    /// Unscaled predictor weights `b_{j,n+1}`, j = 0..=n.
    pub fn predictor_row(&self, n: usize) -> Vec<T> {
        (0..=n).map(|j| self.rectangle[n - j]).collect()
    }

    /// Unscaled corrector weights `a_{j,n+1}`, j = 0..=n+1 (last is 1).
    pub fn corrector_row(&self, n: usize) -> Vec<T> {
        let mut row = Vec::with_capacity(n + 2);
        row.push(self.endpoint[n]);
        row.extend((1..=n).map(|j| self.trapezoidal[n - j]));
        row.push(T::one());
        row
    }
}

/// Generalized binomial coefficients C(s, k), k = 0, 1, 2, ...
fn binomials<T: Real>(s: T) -> impl Iterator<Item = T> {
    let mut c = T::one();
    let mut k = 0usize;
    std::iter::from_fn(move || {
        let out = c;
        k += 1;
        c = c * (s - T::from_usize_lossy(k - 1)) / T::from_usize_lossy(k);
        Some(out)
    })
}

fn series_sum<T: Real>(terms: impl Iterator<Item = T>) -> T {
    let eps = T::epsilon();
    let mut sum = T::zero();
    for (i, t) in terms.enumerate() {
        sum = sum + t;
        if i > 2 && t.abs() <= eps * sum.abs() {
            break;
        }
        if i > 400 {
            break;
        }
    }
    sum
}

/// `(m+1)^σ − m^σ`.
fn rectangle_weight<T: Real>(sigma: T, m: usize) -> T {
    if m == 0 {
        return T::one();
    }
    let mf = T::from_usize_lossy(m);
    mf.powf(sigma) * (sigma * mf.recip().ln_1p()).exp_m1()
}

/// `(m+2)^s + m^s − 2(m+1)^s` with `s = σ + 1`.
fn interior_weight<T: Real>(sigma: T, m: usize) -> T {
    let s = sigma + T::one();
    let base = T::from_usize_lossy(m + 1);
    let u = base.recip();
    if u.to_f64_lossy() > SERIES_CUTOFF {
        let mf = T::from_usize_lossy(m);
        return (base + T::one()).powf(s) + mf.powf(s) - T::two() * base.powf(s);
    }
    // (1+u)^s + (1−u)^s − 2 = 2 Σ_{k even ≥ 2} C(s,k) u^k
    let u2 = u * u;
    let even = binomials(s).enumerate().skip(2).step_by(2).scan(u2, |upow, (_, c)| {
        let term = c * *upow;
        *upow = *upow * u2;
        Some(term)
    });
    base.powf(s) * T::two() * series_sum(even)
}

/// `n^{σ+1} − (n−σ)(n+1)^σ`.
fn endpoint_weight<T: Real>(sigma: T, n: usize) -> T {
    let nf = T::from_usize_lossy(n);
    let base = nf + T::one();
    let v = base.recip();
    if v.to_f64_lossy() > SERIES_CUTOFF {
        return nf.powf(sigma + T::one()) - (nf - sigma) * base.powf(sigma);
    }
    // (n+1)^σ [σv + (1−v) Σ_{k≥2} C(σ,k) (−1)^k v^{k−1}]
    let tail = binomials(sigma).enumerate().skip(2).scan(v, |vpow, (k, c)| {
        let signed = if k % 2 == 0 { c } else { -c };
        let term = signed * *vpow;
        *vpow = *vpow * v;
        Some(term)
    });
    base.powf(sigma) * (sigma * v + (T::one() - v) * series_sum(tail))
}

/// Minimal vector-space operations the stepper needs.
trait Phase<T>: Copy {
    fn zero() -> Self;
    fn axpy(self, k: T, x: Self) -> Self;
    fn finite(&self) -> bool;
}

impl<T: Real> Phase<T> for State<T> {
    fn zero() -> Self {
        State::zero()
    }

    fn axpy(self, k: T, x: Self) -> Self {
        State::new(self.d + k * x.d, self.l + k * x.l)
    }

    fn finite(&self) -> bool {
        self.is_finite()
    }
}

#[derive(Clone, Copy)]
struct Scalar1<T>(T);

impl<T: Real> Phase<T> for Scalar1<T> {
    fn zero() -> Self {
        Scalar1(T::zero())
    }

    fn axpy(self, k: T, x: Self) -> Self {
        Scalar1(self.0 + k * x.0)
    }

    fn finite(&self) -> bool {
        self.0.is_finite()
    }
}

fn pece<T: Real, V: Phase<T>>(
    rhs: impl Fn(V) -> V,
    x0: V,
    weights: &QuadratureWeights<T>,
    h: T,
    steps: usize,
    corrector_passes: usize,
) -> Result<Vec<V>> {
    let mut xs = Vec::with_capacity(steps + 1);
    let mut fs = Vec::with_capacity(steps + 1);
    xs.push(x0);
    fs.push(rhs(x0));
    for n in 0..steps {
        let mut pred_sum = V::zero();
        for (j, f) in fs.iter().enumerate() {
            pred_sum = pred_sum.axpy(weights.rectangle[n - j], *f);
        }
        let predicted = x0.axpy(weights.predictor_scale, pred_sum);

        let mut corr_sum = V::zero().axpy(weights.endpoint[n], fs[0]);
        for (j, f) in fs.iter().enumerate().skip(1) {
            corr_sum = corr_sum.axpy(weights.trapezoidal[n - j], *f);
        }
        let base = x0.axpy(weights.corrector_scale, corr_sum);

        let mut x = predicted;
        for _ in 0..corrector_passes {
            x = base.axpy(weights.corrector_scale, rhs(x));
        }
        if !x.finite() {
            return Err(Error::Divergence {
                step: n + 1,
                time: (T::from_usize_lossy(n + 1) * h).to_f64_lossy(),
            });
        }
        xs.push(x);
        fs.push(rhs(x));
    }
    Ok(xs)
}

/// Solves the fractional predator-prey system `ᶜD^σ X = F(X)` from `s0`.
pub fn caputo_solve<T: Real>(
    params: &ModelParams<T>,
    cfg: &FractionalConfig<T>,
    s0: State<T>,
) -> Result<Trajectory<T>> {
    cfg.validate()?;
    if !s0.is_finite() || s0.d < T::zero() || s0.l < T::zero() {
        return Err(Error::Domain(format!("initial state must be finite and non-negative, got {s0:?}")));
    }
    let steps = cfg.steps();
    let weights = QuadratureWeights::new(cfg.sigma, cfg.h, steps)?;
    let states = pece(
        |x| field_unchecked(params, x),
        s0,
        &weights,
        cfg.h,
        steps,
        cfg.corrector_passes,
    )?;
    Trajectory::new(uniform_grid(cfg.h, steps), states, *params, RunConfig::Fractional(*cfg))
}

/// Solves the scalar test problem `ᶜD^σ y = λy`, `y(0) = y0`, with the same
/// predictor-corrector. Returns `y` on the grid `0, h, …, ⌈t_end/h⌉h`.
pub fn scalar_caputo_solve<T: Real>(lambda_coeff: T, sigma: T, y0: T, h: T, t_end: T) -> Result<Vec<T>> {
    let cfg = FractionalConfig::new(sigma, h, t_end)?;
    if !y0.is_finite() || !lambda_coeff.is_finite() {
        return Err(Error::Domain("scalar problem needs finite data".into()));
    }
    let steps = cfg.steps();
    let weights = QuadratureWeights::new(sigma, h, steps)?;
    let ys = pece(|y: Scalar1<T>| Scalar1(lambda_coeff * y.0), Scalar1(y0), &weights, h, steps, 1)?;
    Ok(ys.into_iter().map(|y| y.0).collect())
}

/// Total-population bound for the fractional system:
/// `W(t) ≤ (A/β)(1 − E_σ(−βt^σ)) + W(0) E_σ(−βt^σ) ≤ W(0) + A/β`,
/// with `A = ((α + 4β)/4)·M`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalBound<T> {
    pub w0: T,
    pub a: T,
    pub beta: T,
    /// `W(0) + A/β`.
    pub bound: T,
}

impl<T: Real> FractionalBound<T> {
    /// Time-resolved envelope at `t` for order `sigma`.
    pub fn envelope(&self, sigma: T, t: T, cfg: &MLSeriesConfig) -> Result<T> {
        let decay = mittag_leffler(sigma, T::one(), -self.beta * t.powf(sigma), cfg)?;
        Ok(self.a / self.beta * (T::one() - decay) + self.w0 * decay)
    }

    /// Limit of the envelope as `t → ∞`.
    pub fn asymptote(&self) -> T {
        self.a / self.beta
    }
}

/// `M = max{D(0), C}`.
pub fn scale_constant<T: Real>(params: &ModelParams<T>, s0: State<T>) -> T {
    s0.d.max(params.capacity())
}

pub fn fractional_conservation_bound<T: Real>(params: &ModelParams<T>, w0: T, m: T) -> FractionalBound<T> {
    let beta = params.beta();
    let a = (params.alpha() + T::four() * beta) / T::four() * m;
    FractionalBound {
        w0,
        a,
        beta,
        bound: w0 + a / beta,
    }
}
