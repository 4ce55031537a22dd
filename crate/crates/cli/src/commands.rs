use std::path::{Path, PathBuf};

use predprey::model::coexistence_point;
use predprey::{FractionalConfig, RunConfig, SchemeConfig};

use crate::args::{Axis, Opts};
use crate::compare::compare;
use crate::config::FileConfig;
use crate::csv::{read_series, Series};
use crate::error::{CliError, Exit};
use crate::gnuplot;
use crate::presets::{preset, PRESETS};
use crate::report;
use crate::scenario::{run_batch, write_text, Outcome, Scenario, Verification};

fn load(opts: &Opts) -> Result<FileConfig, CliError> {
    match &opts.config {
        Some(path) => FileConfig::load(path),
        None => Ok(FileConfig::default()),
    }
}

fn scenarios(opts: &Opts) -> Result<(FileConfig, Vec<Scenario>), CliError> {
    let file = load(opts)?;
    let sc = file.scenarios(&opts.layer())?;
    Ok((file, sc))
}

fn out_dir(opts: &Opts, file: &FileConfig, default: &str) -> PathBuf {
    opts.output
        .clone()
        .or_else(|| file.run.output.clone())
        .unwrap_or_else(|| PathBuf::from(default))
}

fn worse(a: Exit, b: Exit) -> Exit {
    if b.code() > a.code() {
        b
    } else {
        a
    }
}

/// Exit status contributed by one verification result.
fn verdict(v: &Verification, strict: bool) -> Exit {
    match v {
        Ok(r) if r.is_clean() => Exit::Ok,
        Ok(_) if strict => Exit::Violation,
        Ok(_) => Exit::Ok,
        Err(_) => Exit::Failure,
    }
}

/// Prints per-scenario results and folds them into an exit status. A run
/// that diverged counts as a violation under `--strict`.
fn report_outcomes(scenarios: &[Scenario], results: &[Result<Outcome, CliError>], strict: bool) -> Exit {
    let mut exit = Exit::Ok;
    for (sc, r) in scenarios.iter().zip(results) {
        match r {
            Ok(o) => {
                println!("{}", report::summary(&o.trajectory));
                if let Some(v) = &o.verification {
                    println!("{}", report::verification(&sc.name, v));
                    exit = worse(exit, verdict(v, strict));
                }
            }
            Err(CliError::Model(e @ predprey::Error::Divergence { .. })) => {
                eprintln!("{}: {e}", sc.name);
                exit = worse(exit, if strict { Exit::Violation } else { Exit::Failure });
            }
            Err(e) => {
                eprintln!("{}: {e}", sc.name);
                exit = Exit::Failure;
            }
        }
    }
    exit
}

/// Runs groups of scenarios in one parallel batch, writing CSVs into `dir`
/// and one gnuplot script per group.
fn emit(groups: &[(String, Vec<Scenario>)], dir: &Path, strict: bool) -> Result<Exit, CliError> {
    let all: Vec<Scenario> = groups.iter().flat_map(|(_, g)| g.iter().cloned()).collect();
    if all.is_empty() {
        println!("no scenarios to run");
        return Ok(Exit::Ok);
    }
    let results = run_batch(&all, Some(dir), strict)?;
    let exit = report_outcomes(&all, &results, strict);
    let mut offset = 0;
    for (stem, group) in groups {
        let slice = &results[offset..offset + group.len()];
        let scenarios = &all[offset..offset + group.len()];
        offset += group.len();
        let csvs: Vec<&Path> = slice.iter().filter_map(|r| r.as_ref().ok()?.csv.as_deref()).collect();
        if csvs.is_empty() {
            continue;
        }
        let timeseries = scenarios.iter().any(|s| s.outputs.timeseries);
        let phase = scenarios.iter().any(|s| s.outputs.phase);
        let path = dir.join(format!("{stem}.gp"));
        write_text(&path, &gnuplot::script(stem, &csvs, timeseries, phase))?;
        for c in &csvs {
            println!("wrote {}", c.display());
        }
        println!("wrote {}", path.display());
    }
    Ok(exit)
}

pub fn simulate(opts: &Opts) -> Result<Exit, CliError> {
    let (file, sc) = scenarios(opts)?;
    let dir = out_dir(opts, &file, "output");
    emit(&[("simulate".to_string(), sc)], &dir, opts.strict)
}

pub fn figures(opts: &Opts, name: &str) -> Result<Exit, CliError> {
    let names: Vec<&str> = if name == "all" { PRESETS.to_vec() } else { vec![name] };
    let groups = names
        .iter()
        .map(|n| Ok((n.to_string(), preset(n)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let dir = opts.output.clone().unwrap_or_else(|| PathBuf::from("figures"));
    emit(&groups, &dir, opts.strict)
}

pub fn verify(opts: &Opts) -> Result<Exit, CliError> {
    let (_, sc) = scenarios(opts)?;
    let results = run_batch(&sc, None, true)?;
    let mut exit = Exit::Ok;
    for (s, r) in sc.iter().zip(&results) {
        match r {
            Ok(o) => {
                for w in &o.trajectory.warnings {
                    println!("{}: warning: {w}", s.name);
                }
                let v = o.verification.as_ref().expect("verification requested");
                println!("{}", report::verification(&s.name, v));
                exit = worse(exit, verdict(v, opts.strict));
            }
            Err(CliError::Model(e @ predprey::Error::Divergence { .. })) => {
                println!("{}: VIOLATION: {e}", s.name);
                if opts.strict {
                    exit = worse(exit, Exit::Violation);
                }
            }
            Err(e) => {
                eprintln!("{}: {e}", s.name);
                exit = Exit::Failure;
            }
        }
    }
    Ok(exit)
}

pub fn stability(opts: &Opts) -> Result<Exit, CliError> {
    let (_, sc) = scenarios(opts)?;
    for s in &sc {
        let param = match s.run.sigma() {
            Some(sigma) => format!(" sigma={sigma}"),
            None if s.run.scheme().is_discrete() => format!(" h={}", s.run.h()),
            None => String::new(),
        };
        let mut text = format!("{} [{}{param}]", s.name, s.run.scheme());
        for r in s.stability()? {
            text.push('\n');
            text.push_str(&report::stability(&r));
        }
        println!("{text}");
        if let Some(dir) = &opts.output {
            std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
            let path = dir.join(format!("{}_stability.txt", s.name));
            write_text(&path, &format!("{text}\n"))?;
            println!("wrote {}", path.display());
        }
    }
    Ok(Exit::Ok)
}

pub fn compare_cmd(opts: &Opts, a: Option<&Path>, b: Option<&Path>, against: &str) -> Result<Exit, CliError> {
    match (a, b) {
        (Some(a), Some(b)) => {
            let c = compare(&read_series(a)?, &read_series(b)?)?;
            println!("{} vs {}", a.display(), b.display());
            println!("{}", report::comparison(&c));
            Ok(Exit::Ok)
        }
        (Some(_), None) => Err(CliError::Usage("compare needs two CSV files, or none".into())),
        _ => {
            let file = load(opts)?;
            let flags = opts.layer();
            let mine = file.scenarios(&flags)?;
            let mut other_flags = flags.clone();
            other_flags.scheme = Some(against.to_string());
            let theirs = file.scenarios(&other_flags)?;
            for (x, y) in mine.iter().zip(&theirs) {
                let (tx, ty) = (x.solve()?, y.solve()?);
                let c = compare(&Series::from(&tx), &Series::from(&ty))?;
                println!("{} ({}) vs {}", x.name, tx.scheme, ty.scheme);
                println!("{}", report::comparison(&c));
            }
            Ok(Exit::Ok)
        }
    }
}

fn with_value(sc: &Scenario, axis: Axis, v: f64) -> Result<Scenario, CliError> {
    let run = match (axis, sc.run) {
        (Axis::H, RunConfig::Classical(c)) => RunConfig::Classical(SchemeConfig::new(c.scheme, v, c.t_end)?),
        (Axis::H, RunConfig::Fractional(c)) => RunConfig::Fractional(
            FractionalConfig::new(c.sigma, v, c.t_end)?.with_corrector_passes(c.corrector_passes)?,
        ),
        (Axis::Sigma, RunConfig::Fractional(c)) => RunConfig::Fractional(
            FractionalConfig::new(v, c.h, c.t_end)?.with_corrector_passes(c.corrector_passes)?,
        ),
        (Axis::Sigma, RunConfig::Classical(c)) => {
            return Err(CliError::Usage(format!(
                "sweeping sigma needs the fractional scheme, got {}",
                c.scheme
            )))
        }
    };
    let tag = match axis {
        Axis::H => "h",
        Axis::Sigma => "sigma",
    };
    Ok(Scenario {
        name: format!("{}_{tag}{v}", sc.name),
        run,
        ..sc.clone()
    })
}

pub fn sweep(opts: &Opts, axis: Axis, values: &[f64]) -> Result<Exit, CliError> {
    let (file, base) = scenarios(opts)?;
    let variants = base
        .iter()
        .flat_map(|sc| values.iter().map(move |&v| with_value(sc, axis, v)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let dir = opts.output.clone().or_else(|| file.run.output.clone());
    let results = run_batch(&variants, dir.as_deref(), opts.strict)?;
    if let Some(d) = &dir {
        let csvs: Vec<&Path> = results.iter().filter_map(|r| r.as_ref().ok()?.csv.as_deref()).collect();
        if !csvs.is_empty() {
            let path = d.join("sweep.gp");
            write_text(&path, &gnuplot::script("sweep", &csvs, true, true))?;
        }
    }
    println!("name,value,final_D,final_L,dist_E3,sup_vs_reference");
    let mut exit = Exit::Ok;
    for ((sc, r), v) in variants.iter().zip(&results).zip(values.iter().cycle()) {
        let o = match r {
            Ok(o) => o,
            Err(e @ CliError::Model(predprey::Error::Divergence { .. })) => {
                println!("{},{v},diverged,,,", sc.name);
                eprintln!("{}: {e}", sc.name);
                exit = worse(exit, if opts.strict { Exit::Violation } else { Exit::Ok });
                continue;
            }
            Err(e) => {
                eprintln!("{}: {e}", sc.name);
                exit = worse(exit, Exit::Failure);
                continue;
            }
        };
        let last = o.trajectory.last();
        let e3 = coexistence_point(&sc.params).map(|e| format!("{:e}", last.sup_dist(&e))).unwrap_or_default();
        let reference = predprey::reference_solve(&sc.params, sc.initial, sc.run.t_end(), sc.run.h())
            .ok()
            .and_then(|r| compare(&Series::from(&o.trajectory), &Series::from(&r)).ok())
            .map(|c| format!("{:e}", c.sup_norm))
            .unwrap_or_default();
        println!("{},{v},{:e},{:e},{e3},{reference}", sc.name, last.d, last.l);
        if let Some(ver) = &o.verification {
            if !matches!(ver, Ok(rep) if rep.is_clean()) {
                eprintln!("{}", report::verification(&sc.name, ver));
            }
            exit = worse(exit, verdict(ver, opts.strict));
        }
    }
    Ok(exit)
}
