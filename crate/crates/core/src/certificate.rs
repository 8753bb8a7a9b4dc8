//! The distance threshold `δ` of a stick knot and the insertion counts that
//! certify isotopy.
//!
//! `δ` comes from the separation of the polygon's edges: `r₁` is the smallest
//! gap between non-adjacent edges or between vertices, `r₂ = min(r₁, ε) / 2`
//! is the radius of the balls cut out around every vertex, `r₃` is the
//! smallest gap between the remaining edge pieces, and `δ = r₃ / 18`.
//!
//! The iteration counts are the first levels at which the closed-form bounds
//! drop below `δ` (distance), below `nλ` (tangent length) and below
//! `nλ sin(π/8)` (tangent angle).

use std::f64::consts::PI;

use crate::bezier::second_diff;
use crate::bounds::{hodograph_rate_bound, insertion_distance_bound, BoundInputs};
use crate::error::{Error, Result};
use crate::geometry::{clip_segment_outside_balls, seg_seg_distance, Point3, Segment3};
use crate::polygon::PolyKnot;

/// Insertion counts above this are reported as overflow.
pub const MAX_ITERATIONS: u32 = 64;

/// Angle within which refined tangents must stay of the polygon's tangents.
pub const TANGENT_ANGLE: f64 = PI / 8.0;

#[derive(Debug, Clone, PartialEq)]
pub struct DeltaCertificate {
    pub epsilon: f64,
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
    pub r4: f64,
    pub delta: f64,
    /// Points dividing the polygon into arcs; here the vertices.
    pub division_points: Vec<Point3>,
}

pub fn compute_delta(p: &PolyKnot, epsilon: f64) -> Result<DeltaCertificate> {
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(Error::Domain(format!("epsilon must be positive, got {epsilon}")));
    }
    let division_points = p.vertices().to_vec();
    let edges = p.edges();
    let n = edges.len();

    let mut r1 = f64::INFINITY;
    for i in 0..n {
        for k in i + 2..n {
            if i == 0 && k == n - 1 {
                continue;
            }
            r1 = r1.min(seg_seg_distance(&edges[i], &edges[k]));
        }
    }
    for (i, a) in division_points.iter().enumerate() {
        for b in &division_points[i + 1..] {
            r1 = r1.min(a.distance(b));
        }
    }

    let r2 = f64::min(r1 / 2.0, epsilon / 2.0);

    let tol = p.tolerance();
    let mut pieces: Vec<Segment3> = Vec::with_capacity(n);
    for (k, e) in edges.iter().enumerate() {
        let clipped = clip_segment_outside_balls(e, &division_points, r2, &tol);
        if clipped.is_empty() {
            return Err(Error::CertificateDegenerate(format!(
                "edge {k} of length {} vanishes inside balls of radius r2={r2}",
                e.length()
            )));
        }
        pieces.extend(clipped);
    }

    let mut r3 = f64::INFINITY;
    for (i, a) in pieces.iter().enumerate() {
        for b in &pieces[i + 1..] {
            r3 = r3.min(seg_seg_distance(a, b));
        }
    }

    let r4 = r3 / 6.0;
    let delta = r4 / 3.0;
    Ok(DeltaCertificate {
        epsilon,
        r1,
        r2,
        r3,
        r4,
        delta,
        division_points,
    })
}

/// How the tangent-length count `m₂T` is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TangentTest {
    /// `(Ω₂/λ)² < n 2^(3j) + 2^(2j)`.
    #[default]
    Simplified,
    /// Hodograph bound strictly below `nλ`.
    Strict,
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be positive, got {v}")))
    }
}

fn check_nonnegative(name: &str, v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be nonnegative, got {v}")))
    }
}

/// First level in `0..=MAX_ITERATIONS` satisfying `accept`.
fn first_level(accept: impl Fn(u32) -> bool) -> Result<u32> {
    (0..=MAX_ITERATIONS)
        .find(|&j| accept(j))
        .ok_or(Error::SolverOverflow(MAX_ITERATIONS))
}

/// Smallest `j` with the insertion distance bound at most `delta`.
///
/// Solved as `ceil(log2(((n Ω₁ / 4δ)² - 1) / n))`, then nudged by direct
/// evaluation of the bound so rounding in the logarithm cannot shift it.
pub fn compute_m1(n: usize, omega1: f64, delta: f64) -> Result<u32> {
    check_positive("delta", delta)?;
    check_nonnegative("omega1", omega1)?;
    let bound = |j: u32| {
        insertion_distance_bound(&BoundInputs {
            n,
            j,
            omega1,
            omega2: 0.0,
            lambda: 1.0,
        })
    };
    let nf = n as f64;
    let x = ((nf * omega1 / (4.0 * delta)).powi(2) - 1.0) / nf;
    let guess = if x <= 1.0 { 0.0 } else { x.log2().ceil() };
    if guess > MAX_ITERATIONS as f64 {
        return Err(Error::SolverOverflow(MAX_ITERATIONS));
    }
    let mut j = guess as u32;
    while j > 0 && bound(j - 1) <= delta {
        j -= 1;
    }
    while bound(j) > delta {
        j += 1;
        if j > MAX_ITERATIONS {
            return Err(Error::SolverOverflow(MAX_ITERATIONS));
        }
    }
    Ok(j)
}

/// Smallest `j` at which the hodograph deviation is shorter than the
/// shortest tangent `nλ`.
pub fn compute_m2t(n: usize, lambda: f64, omega2: f64, test: TangentTest) -> Result<u32> {
    check_positive("lambda", lambda)?;
    check_nonnegative("omega2", omega2)?;
    let nf = n as f64;
    match test {
        TangentTest::Simplified => {
            let lhs = (omega2 / lambda).powi(2);
            first_level(|j| {
                lhs < nf * 2f64.powi(3 * j as i32) + 2f64.powi(2 * j as i32)
            })
        }
        TangentTest::Strict => first_level(|j| {
            hodograph_rate_bound(&BoundInputs {
                n,
                j,
                omega1: 0.0,
                omega2,
                lambda,
            }) < nf * lambda
        }),
    }
}

/// Smallest `j` at which the tangent angle bound `arcsin(a / nλ)` is at most
/// `π/8`.
pub fn compute_m2a(n: usize, lambda: f64, omega2: f64) -> Result<u32> {
    check_positive("lambda", lambda)?;
    check_nonnegative("omega2", omega2)?;
    let limit = n as f64 * lambda * TANGENT_ANGLE.sin();
    first_level(|j| {
        hodograph_rate_bound(&BoundInputs {
            n,
            j,
            omega1: 0.0,
            omega2,
            lambda,
        }) <= limit
    })
}

/// The scalar inputs of the iteration solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationInputs {
    pub n: usize,
    pub omega1: f64,
    pub omega2: f64,
    pub lambda: f64,
    pub delta: f64,
}

impl IterationInputs {
    /// `Ω₁` of the closed control sequence, `Ω₂` of the hodograph's control
    /// points, the shortest edge, and `δ` at the given `ε`.
    pub fn from_polygon(p: &PolyKnot, epsilon: f64) -> Result<(Self, DeltaCertificate)> {
        if p.level() != 0 {
            return Err(Error::Domain(format!(
                "iteration inputs come from the unrefined polygon, got level {}",
                p.level()
            )));
        }
        let curve = p.bezier();
        let omega1 = second_diff(curve.control())?.omega;
        let omega2 = second_diff(curve.hodograph().control())?.omega;
        let cert = compute_delta(p, epsilon)?;
        Ok((
            Self {
                n: p.len(),
                omega1,
                omega2,
                lambda: p.min_edge_length(),
                delta: cert.delta,
            },
            cert,
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationBounds {
    pub m1: u32,
    pub m2t: u32,
    pub m2a: u32,
    pub m2: u32,
    pub m: u32,
    pub inputs: IterationInputs,
}

pub fn iteration_bounds(inputs: &IterationInputs, test: TangentTest) -> Result<IterationBounds> {
    let IterationInputs {
        n,
        omega1,
        omega2,
        lambda,
        delta,
    } = *inputs;
    let m1 = compute_m1(n, omega1, delta)?;
    let m2t = compute_m2t(n, lambda, omega2, test)?;
    let m2a = compute_m2a(n, lambda, omega2)?;
    let m2 = m2t.max(m2a);
    Ok(IterationBounds {
        m1,
        m2t,
        m2a,
        m2,
        m: m1.max(m2),
        inputs: *inputs,
    })
}

/// Insertion count after which every further refinement's Bézier curve is
/// isotopic to `p`.
pub fn required_iterations(p: &PolyKnot, epsilon: f64) -> Result<IterationBounds> {
    let (inputs, _) = IterationInputs::from_polygon(p, epsilon)?;
    iteration_bounds(&inputs, TangentTest::Simplified)
}
