//! Reference RK4 integration, the explicit Euler map and the Mickens
//! nonstandard finite-difference map.

use crate::error::{Error, Result};
use crate::model::{field_unchecked, ModelParams, State};
use crate::scalar::{Real, Scalar};
use crate::trajectory::{uniform_grid, RunConfig, Scheme, SchemeConfig, Trajectory};

/// Denominator function and derived constant of the Mickens scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MickensAux<T> {
    /// φ(h) = (1 − e^{−βh})/β.
    pub phi: T,
    /// ξ = 1 + αφ.
    pub xi: T,
}

impl<T: Real> MickensAux<T> {
    pub fn new(params: &ModelParams<T>, h: T) -> Self {
        let phi = denominator(params.beta(), h);
        Self {
            phi,
            xi: T::one() + params.alpha() * phi,
        }
    }
}

/// φ(h) = (1 − e^{−βh})/β, evaluated through `expm1`; φ(h) = h when β = 0.
pub fn denominator<T: Real>(beta: T, h: T) -> T {
    if beta == T::zero() {
        h
    } else {
        -(-beta * h).exp_m1() / beta
    }
}

/// One explicit Euler step:
/// `D' = D(αh(1 − D/C) − phL + 1)`, `L' = L(phD − βh + 1)`.
///
/// Negative populations are returned as-is when the step is too large.
pub fn euler_step<T: Scalar>(params: &ModelParams<T>, h: T, s: State<T>) -> State<T> {
    let one = T::one();
    let (alpha, beta, p, c) = (params.alpha(), params.beta(), params.p(), params.capacity());
    State::new(
        s.d * (alpha * h * (one - s.d / c) - p * h * s.l + one),
        s.l * (p * h * s.d - beta * h + one),
    )
}

/// One Mickens step. `D'` is computed first and feeds the `L'` update.
pub fn mickens_step<T: Real>(params: &ModelParams<T>, h: T, s: State<T>) -> State<T> {
    let phi = denominator(params.beta(), h);
    mickens_step_with_phi(params, phi, s)
}

pub(crate) fn mickens_step_with_phi<T: Real>(params: &ModelParams<T>, phi: T, s: State<T>) -> State<T> {
    let one = T::one();
    let (alpha, beta, p, c) = (params.alpha(), params.beta(), params.p(), params.capacity());
    let d = (alpha * phi + one) * s.d / (one + p * phi * s.l + alpha * phi * s.d / c);
    let l = (p * phi * d + one) * s.l / (one + beta * phi);
    State::new(d, l)
}

/// Classical fourth-order Runge-Kutta step on the continuous field.
pub fn rk4_step<T: Real>(params: &ModelParams<T>, h: T, s: State<T>) -> State<T> {
    let half = T::lit(0.5);
    let k1 = field_unchecked(params, s);
    let k2 = field_unchecked(params, s.add(k1.scale(h * half)));
    let k3 = field_unchecked(params, s.add(k2.scale(h * half)));
    let k4 = field_unchecked(params, s.add(k3.scale(h)));
    let incr = k1.add(k2.scale(T::two())).add(k3.scale(T::two())).add(k4);
    s.add(incr.scale(h / T::lit(6.0)))
}

/// Fixed-step RK4 solution of the continuous system on `[0, ⌈t_end/h⌉·h]`.
pub fn reference_solve<T: Real>(
    params: &ModelParams<T>,
    s0: State<T>,
    t_end: T,
    h: T,
) -> Result<Trajectory<T>> {
    let cfg = SchemeConfig::new(Scheme::Reference, h, t_end)?;
    iterate(params, &cfg, s0)
}

/// Applies the configured stepper `⌈t_end/h⌉` times from `s0`.
///
/// Euler runs with validated parameters get a warning attached when
/// `1 − βh ≤ 0`.
pub fn iterate<T: Real>(
    params: &ModelParams<T>,
    cfg: &SchemeConfig<T>,
    s0: State<T>,
) -> Result<Trajectory<T>> {
    cfg.validate()?;
    if !s0.is_finite() {
        return Err(Error::Domain(format!("initial state must be finite, got {s0:?}")));
    }
    let n = cfg.steps();
    let h = cfg.h;
    let phi = denominator(params.beta(), h);
    let step: Box<dyn Fn(State<T>) -> State<T> + '_> = match cfg.scheme {
        Scheme::Reference => Box::new(move |s| rk4_step(params, h, s)),
        Scheme::Euler => Box::new(move |s| euler_step(params, h, s)),
        Scheme::Mickens => Box::new(move |s| mickens_step_with_phi(params, phi, s)),
        Scheme::Fractional => unreachable!("rejected by SchemeConfig::validate"),
    };

    let times = uniform_grid(h, n);
    let mut states = Vec::with_capacity(n + 1);
    states.push(s0);
    let mut s = s0;
    for i in 1..=n {
        s = step(s);
        if !s.is_finite() {
            return Err(Error::Divergence {
                step: i,
                time: times[i].to_f64_lossy(),
            });
        }
        states.push(s);
    }

    let mut traj = Trajectory::new(times, states, *params, RunConfig::Classical(*cfg))?;
    if cfg.scheme == Scheme::Euler && params.is_validated() && !euler_h1_holds(params, h) {
        traj.warnings.push(format!(
            "H1 violated: 1 - beta*h = {} <= 0; non-negativity is not guaranteed",
            T::one() - params.beta() * h
        ));
    }
    Ok(traj)
}

/// `1 − βh > 0`.
pub fn euler_h1_holds<T: Scalar>(params: &ModelParams<T>, h: T) -> bool {
    T::one() - params.beta() * h > T::zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::equilibria;
    use num_rational::Rational64;

    fn standard() -> ModelParams<f64> {
        ModelParams::new(0.05, 0.3, 0.4, 1.0).unwrap()
    }

    const E3: State<f64> = State { d: 0.75, l: 0.03125 };

    #[test]
    fn euler_step_exact_in_rationals() {
        let r = |n, d| Rational64::new(n, d);
        let params = ModelParams::new(r(1, 20), r(3, 10), r(2, 5), r(1, 1)).unwrap();
        let next = euler_step(&params, r(1, 4), State::new(r(1, 5), r(3, 10)));
        assert_eq!(next, State::new(r(49, 250), r(567, 2000)));
        assert_eq!(next, State::new(r(196, 1000), r(2835, 10000)));
    }

    #[test]
    fn euler_fixed_points() {
        let params = standard();
        assert_eq!(euler_step(&params, 0.25, E3).sup_dist(&E3), 0.0);
        assert_eq!(euler_step(&params, 0.25, State::zero()), State::zero());
    }

    #[test]
    fn mickens_sample_step() {
        let params = standard();
        let aux = MickensAux::new(&params, 0.25);
        assert!((aux.phi - 0.240_855_045_571_490_4).abs() < 1e-15);
        assert!((aux.phi - (1.0 - (-0.075f64).exp()) / 0.3).abs() < 1e-15);
        let next = mickens_step(&params, 0.25, State::new(0.2, 0.3));
        assert!((next.d - 0.196_263_319_070_091_8).abs() < 1e-15);
        assert!((next.l - 0.285_074_063_325_017_6).abs() < 1e-15);
    }

    #[test]
    fn mickens_fixed_points() {
        let params = standard();
        assert_eq!(mickens_step(&params, 0.25, State::zero()), State::zero());
        for h in [0.01, 0.25, 5.0, 50.0] {
            for eq in equilibria(&params) {
                let p = eq.point.unwrap();
                assert!(mickens_step(&params, h, p).sup_dist(&p) <= 1e-14);
            }
        }
    }

    #[test]
    fn denominator_limits() {
        let beta = 0.3;
        for i in 1..=100 {
            let h = i as f64 / 100.0;
            let phi = denominator(beta, h);
            assert!(phi > 0.0 && phi < h);
            assert!((phi - h).abs() <= beta / 2.0 * h * h);
        }
        let tiny: f64 = denominator(0.3, 1e-12);
        assert!((tiny - 1e-12).abs() < 1e-24);
        assert_eq!(denominator(0.0, 0.7), 0.7);
    }

    #[test]
    fn xi_in_unit_interval_above_one() {
        let params = standard();
        for i in 1..=1000 {
            let xi = MickensAux::new(&params, i as f64 / 10.0).xi;
            assert!(xi > 1.0 && xi < 2.0);
        }
    }

    #[test]
    fn reference_stays_at_e3() {
        let traj = reference_solve(&standard(), E3, 50.0, 0.25).unwrap();
        assert!(traj.states.iter().all(|s| s.sup_dist(&E3) <= 1e-12));
    }

    #[test]
    fn reference_prey_free_decays() {
        let traj = reference_solve(&standard(), State::new(0.0, 0.5), 300.0, 0.25).unwrap();
        assert!(traj.states.iter().all(|s| s.d == 0.0));
        assert!(traj.states.windows(2).all(|w| w[1].l < w[0].l));
    }

    #[test]
    fn iterate_two_states_for_single_step() {
        let cfg = SchemeConfig::new(Scheme::Mickens, 0.25, 0.25).unwrap();
        let traj = iterate(&standard(), &cfg, State::new(0.2, 0.3)).unwrap();
        assert_eq!(traj.len(), 2);
        assert_eq!(traj.times, vec![0.0, 0.25]);
        assert_eq!(traj.initial(), State::new(0.2, 0.3));
    }

    #[test]
    fn euler_h1_warning() {
        let params = standard();
        let cfg = SchemeConfig::new(Scheme::Euler, 4.0, 8.0).unwrap();
        let traj = iterate(&params, &cfg, State::new(0.2, 0.3)).unwrap();
        assert_eq!(traj.warnings.len(), 1);
        let cfg = SchemeConfig::new(Scheme::Euler, 0.25, 8.0).unwrap();
        assert!(iterate(&params, &cfg, State::new(0.2, 0.3)).unwrap().warnings.is_empty());
    }

    #[test]
    fn divergence_reports_step() {
        let params = ModelParams::unchecked(5.0, 0.3, 4.0, 1.0);
        let cfg = SchemeConfig::new(Scheme::Euler, 10.0, 10_000.0).unwrap();
        match iterate(&params, &cfg, State::new(3.0, 3.0)) {
            Err(Error::Divergence { step, .. }) => assert!(step >= 1),
            other => panic!("expected divergence, got {other:?}"),
        }
    }

    #[test]
    fn rejects_non_finite_start() {
        let cfg = SchemeConfig::new(Scheme::Euler, 0.25, 1.0).unwrap();
        assert!(iterate(&standard(), &cfg, State::new(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn runs_in_f32() {
        let params = ModelParams::new(0.05f32, 0.3, 0.4, 1.0).unwrap();
        let cfg = SchemeConfig::new(Scheme::Mickens, 0.25f32, 300.0).unwrap();
        let traj = iterate(&params, &cfg, State::new(0.2, 0.3)).unwrap();
        assert!(traj.last().sup_dist(&State::new(0.75, 0.03125)) < 5e-3);
    }
}
