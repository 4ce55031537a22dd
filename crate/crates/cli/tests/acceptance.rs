//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::fs;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{rngs::StdRng, Rng, SeedableRng};
use rayon::prelude::*;

use predprey::invariants::{continuous_region, euler_region, fractional_region, mickens_region, region_for, NEGATIVITY_TOL};
use predprey::special::{beta, gamma, mittag_leffler};
use predprey::stability::{euler_step_bound, routh_hurwitz_quadratic, schur_cohn_quadratic, CRITERION_TOL};
use predprey::*;

type Outcome = Result<String, String>;

fn standard() -> Params {
    Params::new(0.05, 0.3, 0.4, 1.0).unwrap()
}

fn exact_standard() -> ExactParams {
    let r = |n, d| Rational::new(n, d);
    ExactParams::new(r(1, 20), r(3, 10), r(2, 5), r(1, 1)).unwrap()
}

fn s0() -> Point {
    Point::new(0.2, 0.3)
}

fn e3() -> Point {
    Point::new(0.75, 0.03125)
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn sup_norm(a: &Trajectory64, b: &Trajectory64) -> f64 {
    a.states.iter().zip(&b.states).map(|(x, y)| x.sup_dist(y)).fold(0.0, f64::max)
}

fn classical(scheme: Scheme, h: f64, t_end: f64) -> Trajectory64 {
    iterate(&standard(), &SchemeConfig::new(scheme, h, t_end).unwrap(), s0()).unwrap()
}

fn fractional(sigma: f64, h: f64, t_end: f64) -> Trajectory64 {
    caputo_solve(&standard(), &FractionalConfig::new(sigma, h, t_end).unwrap(), s0()).unwrap()
}

fn equilibrium_reproduction() -> Outcome {
    let exact = model::coexistence_point(&exact_standard()).ok_or("E3 missing in rational arithmetic")?;
    let want = ExactPoint::new(Rational::new(3, 4), Rational::new(1, 32));
    let float = equilibria(&standard())
        .into_iter()
        .find(|e| e.label == EquilibriumLabel::E3)
        .and_then(|e| e.existing_point())
        .ok_or("E3 missing in f64")?;
    let err = float.sup_dist(&e3());
    check(exact == want && err <= 1e-15, format!("rational E3 = ({}, {}), f64 error {err:.1e}", exact.d, exact.l))
}

fn classification_table() -> Outcome {
    use Classification::{Saddle, Sink};
    let cases = [
        (Scheme::Reference, 0.0),
        (Scheme::Euler, 0.25),
        (Scheme::Mickens, 0.25),
        (Scheme::Fractional, 0.95),
    ];
    let mut detail = Vec::new();
    let mut ok = true;
    for (scheme, param) in cases {
        let got: Vec<Classification> =
            classify(&standard(), scheme, param).map_err(|e| e.to_string())?.iter().map(|r| r.classification).collect();
        ok &= got == [Saddle, Saddle, Sink];
        detail.push(format!("{scheme}: {}", got.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("/")));
    }
    check(ok, detail.join("; "))
}

fn euler_step_bound_check() -> Outcome {
    let exact = euler_step_bound(&exact_standard()).map_err(|e| e.to_string())?;
    let float = euler_step_bound(&standard()).map_err(|e| e.to_string())?;
    let mut ok = exact == Rational::from_integer(10) && (float - 10.0).abs() <= 1e-9;
    let e3_poly = |h: f64| {
        classify(&standard(), Scheme::Euler, h)
            .unwrap()
            .into_iter()
            .find(|r| r.equilibrium.label == EquilibriumLabel::E3)
            .and_then(|r| r.char_poly)
            .unwrap()
    };
    let verdicts: Vec<(f64, bool)> = [0.25, 5.0, 9.9, 10.5, 11.0]
        .iter()
        .map(|&h| (h, schur_cohn_quadratic(&e3_poly(h)).unwrap().stable))
        .collect();
    ok &= verdicts.iter().all(|&(h, stable)| stable == (h < 10.0));
    let p0 = schur_cohn_quadratic(&e3_poly(11.0)).unwrap().p_zero;
    ok &= (p0 - 1.04125).abs() <= 1e-9;
    check(ok, format!("h2 = {exact} (f64 {float}), verdicts {verdicts:?}, P(0) at h=11 = {p0}"))
}

fn convergence_to_equilibrium() -> Outcome {
    let runs = [
        classical(Scheme::Reference, 0.25, 300.0),
        classical(Scheme::Euler, 0.25, 300.0),
        classical(Scheme::Mickens, 0.25, 300.0),
        fractional(0.95, 0.25, 300.0),
    ];
    let dists: Vec<(Scheme, f64)> = runs.iter().map(|t| (t.scheme, t.last().sup_dist(&e3()))).collect();
    let ok = dists.iter().all(|&(_, d)| d <= 5e-3);
    let detail = dists.iter().map(|(s, d)| format!("{s} {d:.3e}")).collect::<Vec<_>>().join(", ");
    check(ok, format!("distance to E3 at t=300: {detail} (limit 5e-3)"))
}

/// 50 ordered parameter draws with `C = 1`, five initial states each, and the
/// four runs from every state.
fn corpus() -> Vec<Trajectory64> {
    let mut rng = StdRng::seed_from_u64(2024);
    let mut jobs = Vec::new();
    for _ in 0..50 {
        let pc: f64 = rng.gen_range(0.02..1.0);
        let beta = pc * rng.gen_range(0.02..0.98);
        let alpha = beta * rng.gen_range(0.02..0.98);
        let params = Params::new(alpha, beta, pc, 1.0).unwrap();
        for _ in 0..5 {
            let s = Point::new(1.0 - rng.gen::<f64>(), 1.0 - rng.gen::<f64>());
            let h: f64 = 50.0 * (1.0 - rng.gen::<f64>());
            let sigma: f64 = rng.gen_range(0.8..=1.0);
            jobs.push((params, s, h, sigma));
        }
    }
    jobs.par_iter()
        .flat_map_iter(|&(params, s, h, sigma)| {
            [
                reference_solve(&params, s, 300.0, 0.25),
                iterate(&params, &SchemeConfig::new(Scheme::Euler, 0.25, 300.0).unwrap(), s),
                iterate(&params, &SchemeConfig::new(Scheme::Mickens, h, 300.0).unwrap(), s),
                caputo_solve(&params, &FractionalConfig::new(sigma, 0.25, 300.0).unwrap(), s),
            ]
            .into_iter()
            .map(|r| r.unwrap())
        })
        .collect()
}

fn non_negativity(corpus: &[Trajectory64]) -> Outcome {
    let mut failures = Vec::new();
    for t in corpus {
        if t.scheme == Scheme::Euler && !classical::euler_h1_holds(&t.params, t.config.h()) {
            continue;
        }
        let min = t.states.iter().map(|s| s.d.min(s.l)).fold(f64::INFINITY, f64::min);
        if min < -NEGATIVITY_TOL {
            failures.push(format!("{} {:?} min {min:e}", t.scheme, t.initial()));
        }
    }
    check(
        failures.is_empty(),
        format!("{} trajectories, {} below -1e-12 {}", corpus.len(), failures.len(), failures.join("; ")),
    )
}

fn conservation(corpus: &[Trajectory64]) -> Outcome {
    let p = standard();
    let bounds = [
        ("continuous", continuous_region(&p, s0()).unwrap().numeric_bound, 1.0417),
        ("mickens", mickens_region(&p, 0.25).unwrap().numeric_bound, 1.6847),
        ("fractional", fractional_region(&p, s0()).unwrap().numeric_bound, 1.5417),
    ];
    let euler = euler_region(&p, 0.25).unwrap().numeric_bound;
    let mut ok = bounds.iter().all(|&(_, got, want)| (got - want).abs() < 1e-4) && euler == 1.0;
    let mut failures = Vec::new();
    for t in corpus {
        let report = region_for(t).and_then(|r| check_trajectory(t, &r)).map_err(|e| e.to_string());
        match report {
            Ok(r) if r.is_clean() => {}
            other => failures.push(format!("{} {:?}: {other:?}", t.scheme, t.initial())),
        }
    }
    ok &= failures.is_empty();
    let shown = bounds.iter().map(|(n, b, _)| format!("{n} {b:.4}")).collect::<Vec<_>>().join(", ");
    check(
        ok,
        format!("bounds at standard parameters: {shown}, euler {euler}; {} violations {}", failures.len(), failures.join("; ")),
    )
}

fn special_functions() -> Outcome {
    let points = [0.05, 0.1, 0.3, 0.5, 0.75, 1.0, 1.5, 2.5, 3.7, 5.0, 8.25, 12.0, 20.0, 35.5, 60.0, 120.0];
    let recurrence = points
        .iter()
        .map(|&x: &f64| {
            let (g1, g0) = (gamma(x + 1.0).unwrap(), gamma(x).unwrap());
            ((g1 - x * g0) / g1).abs()
        })
        .fold(0.0, f64::max);
    let b23 = (beta(2.0f64, 3.0).unwrap() - 1.0 / 12.0).abs();
    let cfg = MLSeriesConfig::default();
    let exp_err = (0..=100)
        .map(|i| {
            let z = -5.0 + 0.1 * i as f64;
            let e: f64 = mittag_leffler(1.0, 1.0, z, &cfg).unwrap();
            ((e - z.exp()) / z.exp()).abs()
        })
        .fold(0.0, f64::max);
    let mut origin = 0.0f64;
    for &a in &[0.1, 0.5, 0.95, 1.0, 2.0] {
        for &b in &[0.3, 1.0, 1.7, 2.0, 5.5] {
            let e0: f64 = mittag_leffler(a, b, 0.0, &cfg).unwrap();
            origin = origin.max((e0 * gamma(b).unwrap() - 1.0).abs());
        }
    }
    check(
        recurrence <= 1e-12 && b23 <= 1e-14 && exp_err <= 1e-11 && origin <= 1e-13,
        format!("gamma recurrence {recurrence:.1e}, B(2,3) {b23:.1e}, E11 vs exp {exp_err:.1e}, E(0)Γ(β) {origin:.1e}"),
    )
}

fn fractional_consistency() -> Outcome {
    let reference = reference_solve(&standard(), s0(), 10.0, 0.01).unwrap();
    let a = sup_norm(&reference, &fractional(1.0, 0.01, 10.0));

    let exact: f64 = mittag_leffler(0.95, 1.0, -1.0, &MLSeriesConfig::default()).unwrap();
    let err = |h: f64| (scalar_caputo_solve(-1.0, 0.95, 1.0, h, 1.0).unwrap().last().unwrap() - exact).abs();
    let (coarse, fine) = (err(0.02), err(0.01));

    let reference = reference_solve(&standard(), s0(), 50.0, 0.25).unwrap();
    let dists: Vec<f64> = [0.8, 0.9, 0.95, 0.99].iter().map(|&s| sup_norm(&reference, &fractional(s, 0.25, 50.0))).collect();
    let decreasing = dists.windows(2).all(|w| w[1] < w[0]);

    check(
        a <= 1e-3 && fine <= 5e-3 && coarse / fine >= 2.0 && decreasing,
        format!(
            "(a) sigma=1 vs RK4 {a:.2e}; (b) error {fine:.2e}, halving ratio {:.2}; (c) distances {:?}",
            coarse / fine,
            dists.iter().map(|d| format!("{d:.3e}")).collect::<Vec<_>>()
        ),
    )
}

/// Roots of `c2 x² + c1 x + c0` as `(re, im)` pairs.
fn roots(c2: f64, c1: f64, c0: f64) -> [(f64, f64); 2] {
    let disc = c1 * c1 - 4.0 * c2 * c0;
    if disc >= 0.0 {
        let s = disc.sqrt();
        [((-c1 + s) / (2.0 * c2), 0.0), ((-c1 - s) / (2.0 * c2), 0.0)]
    } else {
        let (re, im) = (-c1 / (2.0 * c2), (-disc).sqrt() / (2.0 * c2));
        [(re, im), (re, -im)]
    }
}

fn criterion_oracles() -> Outcome {
    let mut rng = StdRng::seed_from_u64(99);
    let mut draw = || loop {
        let c: [f64; 3] = [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)];
        if c[0].abs() > 1e-3 {
            return c;
        }
    };
    let (mut sc_seen, mut sc_bad) = (0, 0);
    while sc_seen < 1000 {
        let [c2, c1, c0] = draw();
        let sc = schur_cohn_quadratic(&Quadratic::new(c2, c1, c0)).unwrap();
        if sc.p_one.abs() < CRITERION_TOL || sc.p_minus_one.abs() < CRITERION_TOL || (sc.p_zero.abs() - 1.0).abs() < CRITERION_TOL {
            continue;
        }
        sc_seen += 1;
        let inside = roots(c2, c1, c0).iter().all(|&(re, im)| re.hypot(im) < 1.0);
        sc_bad += usize::from(sc.stable != inside);
    }
    let (mut rh_seen, mut rh_bad) = (0, 0);
    while rh_seen < 1000 {
        let [c2, c1, c0] = draw();
        let rh = routh_hurwitz_quadratic(&Quadratic::new(c2, c1, c0)).unwrap();
        if rh.c1.abs() < CRITERION_TOL || rh.c0.abs() < CRITERION_TOL {
            continue;
        }
        rh_seen += 1;
        let left = roots(c2, c1, c0).iter().all(|&(re, _)| re < 0.0);
        rh_bad += usize::from(rh.stable != left);
    }
    check(
        sc_bad == 0 && rh_bad == 0,
        format!("Schur-Cohn {sc_bad}/{sc_seen} disagreements, Routh-Hurwitz {rh_bad}/{rh_seen}"),
    )
}

fn euler_order() -> Outcome {
    let target = reference_solve(&standard(), s0(), 10.0, 0.001).unwrap().last();
    let err = |h: f64| classical(Scheme::Euler, h, 10.0).last().sup_dist(&target);
    let (coarse, fine) = (err(0.1), err(0.05));
    let ratio = coarse / fine;
    check((1.7..=2.3).contains(&ratio), format!("errors {coarse:.3e} -> {fine:.3e}, ratio {ratio:.3}"))
}

fn cli_contract() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_predprey");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let status = Command::new(bin)
        .args(["figures", "figure2", "--output"])
        .arg(dir.path())
        .output()
        .map_err(|e| e.to_string())?
        .status;
    if !status.success() {
        return Err(format!("figures figure2 exited with {status}"));
    }
    let mut csvs: Vec<_> = fs::read_dir(dir.path())
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "csv"))
        .collect();
    csvs.sort();
    let mut ok = csvs.len() == 3;
    let mut rows = Vec::new();
    let mut mismatched = 0usize;
    for path in &csvs {
        let text = fs::read_to_string(path).map_err(|e| e.to_string())?;
        let mut lines = text.lines();
        ok &= lines.next() == Some("t,D,L");
        let parsed: Vec<[f64; 3]> = lines
            .map(|l| {
                let v: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
                [v[0], v[1], v[2]]
            })
            .collect();
        rows.push(parsed.len());
        ok &= parsed.len() == 1201;
        let s = Point::new(parsed[0][1], parsed[0][2]);
        let solved = reference_solve(&standard(), s, 300.0, 0.25).unwrap();
        for (row, (t, st)) in parsed.iter().zip(solved.times.iter().zip(&solved.states)) {
            let same = row[0].to_bits() == t.to_bits() && row[1].to_bits() == st.d.to_bits() && row[2].to_bits() == st.l.to_bits();
            mismatched += usize::from(!same);
        }
    }
    ok &= mismatched == 0;
    let verify = Command::new(bin)
        .args(["verify", "--strict", "--scheme", "mickens"])
        .output()
        .map_err(|e| e.to_string())?
        .status;
    ok &= verify.code() == Some(0);
    check(
        ok,
        format!("{} CSVs with {rows:?} rows, {mismatched} values differing bitwise, verify --strict exit {:?}", csvs.len(), verify.code()),
    )
}

struct Criterion {
    name: &'static str,
    limit: Duration,
    outcome: Outcome,
    elapsed: Duration,
}

fn timed(name: &'static str, limit_s: u64, f: impl FnOnce() -> Outcome) -> Criterion {
    let start = Instant::now();
    let outcome = f();
    Criterion {
        name,
        limit: Duration::from_secs(limit_s),
        outcome,
        elapsed: start.elapsed(),
    }
}

fn main() {
    let mut results = vec![
        timed("1 equilibrium reproduction", 1, equilibrium_reproduction),
        timed("2 classification table", 1, classification_table),
        timed("3 euler step bound", 1, euler_step_bound_check),
        timed("4 convergence to equilibrium", 10, convergence_to_equilibrium),
    ];
    let start = Instant::now();
    let corpus = corpus();
    let build = start.elapsed();
    let mut c5 = timed("5 non-negativity suite", 60, || non_negativity(&corpus));
    c5.elapsed += build;
    results.push(c5);
    results.push(timed("6 conservation suite", 60, || conservation(&corpus)));
    results.push(timed("7 special-function accuracy", 1, special_functions));
    results.push(timed("8 fractional-solver consistency", 30, fractional_consistency));
    results.push(timed("9 criterion oracles", 1, criterion_oracles));
    results.push(timed("10 euler order", 1, euler_order));
    results.push(timed("11 cli contract", 10, cli_contract));

    let mut failed = 0;
    for c in &mut results {
        let within = c.elapsed <= c.limit;
        let (verdict, detail) = match &c.outcome {
            Ok(d) if within => ("PASS", d.clone()),
            Ok(d) => ("FAIL", format!("{d}; took longer than {:?}", c.limit)),
            Err(d) => ("FAIL", d.clone()),
        };
        failed += usize::from(verdict == "FAIL");
        println!("{verdict} [{:>7.3}s] {}: {detail}", c.elapsed.as_secs_f64(), c.name);
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
