//! Plain-text reports, one `key = value` pair per line.

use std::fmt::Write;

use stickknot::bezier::second_diff;
use stickknot::bounds::{
    curve_polygon_bound, hodograph_rate_bound, insertion_distance_bound, n1, BoundInputs,
};
use stickknot::{DeltaCertificate, DiagnosticsReport, IterationBounds, PolyKnot};

pub fn delta(c: &DeltaCertificate) -> String {
    let mut out = String::new();
    for (key, v) in [
        ("epsilon", c.epsilon),
        ("r1", c.r1),
        ("r2", c.r2),
        ("r3", c.r3),
        ("r4", c.r4),
        ("delta", c.delta),
    ] {
        writeln!(out, "{key:<8}= {v:.4}  ({v:.12e})").unwrap();
    }
    writeln!(out, "division_points = {}", c.division_points.len()).unwrap();
    out
}

pub fn iterations(label: &str, b: &IterationBounds) -> String {
    let i = &b.inputs;
    let mut out = format!("[{label}]\n");
    writeln!(out, "n       = {}", i.n).unwrap();
    writeln!(out, "omega1  = {}", i.omega1).unwrap();
    writeln!(out, "omega2  = {}", i.omega2).unwrap();
    writeln!(out, "lambda  = {}", i.lambda).unwrap();
    writeln!(out, "delta   = {}", i.delta).unwrap();
    writeln!(out, "m1      = {}", b.m1).unwrap();
    writeln!(out, "m2T     = {}", b.m2t).unwrap();
    writeln!(out, "m2A     = {}", b.m2a).unwrap();
    writeln!(out, "m2      = {}", b.m2).unwrap();
    writeln!(out, "M       = {}", b.m).unwrap();
    out
}

/// Norms, `N₁` and the bound tables for levels `0..=jmax`.
pub fn bounds(p: &PolyKnot, jmax: u32) -> String {
    let curve = p.bezier();
    let omega1 = second_diff(curve.control()).map(|d| d.omega).unwrap_or(0.0);
    let omega2 = second_diff(curve.hodograph().control()).map(|d| d.omega).unwrap_or(0.0);
    let lambda = p.min_edge_length();
    let n = p.len();

    let mut out = String::new();
    writeln!(out, "n       = {n}").unwrap();
    writeln!(out, "lambda  = {lambda}").unwrap();
    writeln!(out, "omega1  = {omega1}").unwrap();
    writeln!(out, "omega2  = {omega2}").unwrap();
    writeln!(out, "N1(n)   = {}", n1(n as u64)).unwrap();
    writeln!(
        out,
        "curve_polygon_bound = {}",
        curve_polygon_bound(n as u64, omega1).unwrap_or(f64::NAN)
    )
    .unwrap();
    writeln!(
        out,
        "hodograph_polygon_bound = {}",
        curve_polygon_bound(n as u64, omega2).unwrap_or(f64::NAN)
    )
    .unwrap();
    writeln!(out).unwrap();
    writeln!(
        out,
        "{:>3} {:>12} {:>16} {:>18} {:>18}",
        "j", "degree", "N1(degree)", "distance_bound", "hodograph_bound"
    )
    .unwrap();
    let base = BoundInputs {
        n,
        j: 0,
        omega1,
        omega2,
        lambda,
    };
    for j in 0..=jmax {
        let degree = (n as u64) << j;
        let b = base.at_level(j);
        writeln!(
            out,
            "{:>3} {:>12} {:>16.8e} {:>18.8e} {:>18.8e}",
            j,
            degree,
            n1(degree),
            insertion_distance_bound(&b),
            hodograph_rate_bound(&b)
        )
        .unwrap();
    }
    out
}

pub fn diagnose(r: &DiagnosticsReport) -> String {
    let mut out = String::new();
    writeln!(out, "j           = {}", r.j).unwrap();
    writeln!(out, "samples     = {}", r.samples).unwrap();
    writeln!(out, "seed        = {}", r.seed).unwrap();
    writeln!(out, "attempts    = {}", r.attempts).unwrap();
    writeln!(
        out,
        "view        = {} {} {}",
        r.view.x, r.view.y, r.view.z
    )
    .unwrap();
    writeln!(out, "crossings   = {}", r.crossings).unwrap();
    writeln!(out, "determinant = {}", r.determinant).unwrap();
    out
}
