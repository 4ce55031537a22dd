//! Plain-text renderings of stability and verification results.

use std::fmt::Write as _;

use predprey::{StabilityReport, Trajectory64};

use crate::compare::Comparison;
use crate::scenario::Verification;

fn complex(re: f64, im: f64) -> String {
    if im == 0.0 {
        format!("{re:.6e}")
    } else {
        format!("{re:.6e} {} {:.6e}i", if im < 0.0 { '-' } else { '+' }, im.abs())
    }
}

pub fn stability(r: &StabilityReport<f64>) -> String {
    let mut s = String::new();
    let eq = &r.equilibrium;
    match eq.point {
        Some(p) if eq.exists => write!(s, "{} ({}, {}): {}", eq.label, p.d, p.l, r.classification),
        _ => write!(
            s,
            "{}: does not exist ({})",
            eq.label,
            eq.reason.as_deref().unwrap_or("outside the positive quadrant")
        ),
    }
    .unwrap();
    if let Some(q) = &r.char_poly {
        write!(s, "\n  characteristic polynomial: {}·x² + {}·x + {}", q.c2, q.c1, q.c0).unwrap();
    }
    if let Some([a, b]) = r.eigenvalues {
        write!(s, "\n  eigenvalues: {}, {}", complex(a.re, a.im), complex(b.re, b.im)).unwrap();
    }
    for c in &r.criterion_details {
        write!(s, "\n  {}: {:.6e} ({})", c.name, c.value, if c.holds { "holds" } else { "fails" }).unwrap();
    }
    if let Some(h2) = r.step_bound {
        write!(s, "\n  step bound h2 = {h2}").unwrap();
    }
    s
}

pub fn verification(name: &str, v: &Verification) -> String {
    match v {
        Ok(r) if r.is_clean() => format!("{name}: ok"),
        Ok(r) => format!(
            "{name}: VIOLATION at index {}: {} (observed {:e}, bound {:e})",
            r.first_violation_index.unwrap(),
            r.violated_quantity.as_deref().unwrap_or("?"),
            r.observed.unwrap_or(f64::NAN),
            r.bound.unwrap_or(f64::NAN),
        ),
        Err(e) => format!("{name}: cannot verify: {e}"),
    }
}

pub fn summary(t: &Trajectory64) -> String {
    let last = t.last();
    let mut s = format!(
        "{}: {} h={} states={} final t={} D={:.6e} L={:.6e}",
        t.label,
        t.scheme,
        t.config.h(),
        t.len(),
        t.final_time(),
        last.d,
        last.l
    );
    if let Some(sigma) = t.config.sigma() {
        write!(s, " sigma={sigma}").unwrap();
    }
    for w in &t.warnings {
        write!(s, "\n  warning: {w}").unwrap();
    }
    s
}

pub fn comparison(c: &Comparison) -> String {
    let mut s = format!(
        "sup-norm distance: {:.16e}\nterminal distance: {:.16e}\npoints compared: {}",
        c.sup_norm, c.terminal, c.points
    );
    if c.resampled {
        s.push_str("\nresampled: second series linearly interpolated onto the first grid");
    }
    s
}
