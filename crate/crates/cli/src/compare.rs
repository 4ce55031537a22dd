use crate::csv::Series;
use crate::error::CliError;
use predprey::Point;

/// Distances between two time series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Comparison {
    /// Largest sup-norm state difference over the compared times.
    pub sup_norm: f64,
    /// Sup-norm difference at the last compared time.
    pub terminal: f64,
    /// `true` when `b` was linearly interpolated onto the grid of `a`.
    pub resampled: bool,
    /// Number of grid points compared.
    pub points: usize,
}

/// Compares `b` against `a` on the grid of `a`. Grids that differ are
/// handled by interpolating `b` linearly, restricted to the common time
/// range.
pub fn compare(a: &Series, b: &Series) -> Result<Comparison, CliError> {
    if a.is_empty() || b.is_empty() {
        return Err(CliError::Usage("cannot compare an empty series".into()));
    }
    if a.times == b.times {
        let sup_norm = a.states.iter().zip(&b.states).map(|(x, y)| x.sup_dist(y)).fold(0.0, f64::max);
        let terminal = a.states.last().unwrap().sup_dist(b.states.last().unwrap());
        return Ok(Comparison {
            sup_norm,
            terminal,
            resampled: false,
            points: a.len(),
        });
    }

    let (b0, b1) = (b.times[0], *b.times.last().unwrap());
    let (a0, a1) = (a.times[0], *a.times.last().unwrap());
    if a1 < b0 || b1 < a0 {
        return Err(CliError::Usage(format!(
            "time ranges [{a0}, {a1}] and [{b0}, {b1}] do not overlap"
        )));
    }
    let mut sup_norm = 0.0f64;
    let mut terminal = None;
    let mut points = 0;
    for (t, s) in a.times.iter().zip(&a.states) {
        if *t < b0 || *t > b1 {
            continue;
        }
        let d = s.sup_dist(&interpolate(b, *t));
        sup_norm = sup_norm.max(d);
        terminal = Some(d);
        points += 1;
    }
    let terminal = terminal.ok_or_else(|| {
        CliError::Usage("no grid point of the first series falls inside the second".into())
    })?;
    Ok(Comparison {
        sup_norm,
        terminal,
        resampled: true,
        points,
    })
}

/// Linear interpolation of `s` at `t`, which must lie in its time range.
fn interpolate(s: &Series, t: f64) -> Point {
    let i = s.times.partition_point(|&x| x < t);
    if i < s.len() && s.times[i] == t {
        return s.states[i];
    }
    let (t0, t1) = (s.times[i - 1], s.times[i]);
    let w = (t - t0) / (t1 - t0);
    let (p, q) = (s.states[i - 1], s.states[i]);
    Point::new(p.d + w * (q.d - p.d), p.l + w * (q.l - p.l))
}
