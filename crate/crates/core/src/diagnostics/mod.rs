//! Knot-type diagnostics through planar diagrams.
//!
//! A closed polyline is projected orthogonally along a seeded random
//! direction. Its crossings, with over/under information from depth, give the
//! coloring matrix of the diagram, whose minors have absolute value equal to
//! the knot determinant: 1 for the unknot, 3 for the trefoil, 5 for the
//! figure-eight knot. Projections that are not generic (tangential crossings,
//! crossings near a vertex, triple points, equal depths) are discarded and the
//! next direction is tried.

mod determinant;

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use determinant::{abs_minor, integer_determinant};

use crate::error::{Error, Result};
use crate::geometry::Point3;
use crate::polygon::PolyKnot;
use crate::tolerance::bbox_diagonal;

pub const MAX_PROJECTION_ATTEMPTS: usize = 64;
/// Crossing parameters must lie in `[PARAM_MARGIN, 1 - PARAM_MARGIN]` on both
/// segments.
pub const PARAM_MARGIN: f64 = 1e-6;
/// Minimum depth separation at a crossing, relative to the bounding-box
/// diagonal.
pub const DEPTH_MARGIN: f64 = 1e-9;
/// Polyline samples per control-polygon edge.
pub const SAMPLES_PER_EDGE: usize = 16;

/// Orthonormal viewing frame: planar coordinates along `u` and `v`, depth
/// along `view = u × v` (larger depth is closer to the viewer).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub u: Point3,
    pub v: Point3,
    pub view: Point3,
}

impl Frame {
    pub const XY: Frame = Frame {
        u: Point3::new(1., 0., 0.),
        v: Point3::new(0., 1., 0.),
        view: Point3::new(0., 0., 1.),
    };
    pub const XZ: Frame = Frame {
        u: Point3::new(1., 0., 0.),
        v: Point3::new(0., 0., 1.),
        view: Point3::new(0., -1., 0.),
    };
    pub const YZ: Frame = Frame {
        u: Point3::new(0., 1., 0.),
        v: Point3::new(0., 0., 1.),
        view: Point3::new(1., 0., 0.),
    };

    /// Frame looking along the unit vector `view`.
    pub fn looking_along(view: Point3) -> Frame {
        let view = view / view.norm();
        let axis = if view.x.abs() <= view.y.abs() && view.x.abs() <= view.z.abs() {
            Point3::new(1., 0., 0.)
        } else if view.y.abs() <= view.z.abs() {
            Point3::new(0., 1., 0.)
        } else {
            Point3::new(0., 0., 1.)
        };
        let u = axis.cross(&view);
        let u = u / u.norm();
        let v = view.cross(&u);
        Frame { u, v, view }
    }
}

/// One crossing of the diagram. Segment `i` joins polyline points `i` and
/// `i + 1` (cyclically).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    pub over: usize,
    pub under: usize,
    pub over_param: f64,
    pub under_param: f64,
    pub point: [f64; 2],
    /// +1 when the over strand turns counterclockwise onto the under strand.
    pub sign: i8,
}

/// A passage through a crossing while traversing the strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaussEntry {
    pub crossing: usize,
    pub over: bool,
}

/// Piece of the strand between two consecutive undercrossings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub from_crossing: usize,
    pub to_crossing: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KnotDiagram {
    pub frame: Frame,
    pub points: Vec<[f64; 2]>,
    pub depth: Vec<f64>,
    pub crossings: Vec<Crossing>,
    pub arcs: Vec<Arc>,
    pub gauss_code: Vec<GaussEntry>,
    /// Per crossing: (over arc, incoming under arc, outgoing under arc).
    incidence: Vec<(usize, usize, usize)>,
    /// Directions drawn before this one was accepted, plus one.
    pub attempts: usize,
}

impl KnotDiagram {
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Row per crossing, column per arc: `2 over - in - out`.
    pub fn coloring_matrix(&self) -> Vec<Vec<i64>> {
        let c = self.crossings.len();
        let mut m = vec![vec![0i64; c]; c];
        for (row, &(over, incoming, outgoing)) in self.incidence.iter().enumerate() {
            m[row][over] += 2;
            m[row][incoming] -= 1;
            m[row][outgoing] -= 1;
        }
        m
    }

    /// Over arc, incoming and outgoing under arcs of each crossing.
    pub fn incidence(&self) -> &[(usize, usize, usize)] {
        &self.incidence
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }
}

fn cross2(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn sub2(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

fn norm2(a: [f64; 2]) -> f64 {
    a[0].hypot(a[1])
}

fn point_segment_distance2(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let d = sub2(b, a);
    let len2 = d[0] * d[0] + d[1] * d[1];
    let t = if len2 > 0.0 {
        ((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / len2
    } else {
        0.0
    };
    let t = t.clamp(0.0, 1.0);
    norm2(sub2(p, [a[0] + t * d[0], a[1] + t * d[1]]))
}

#[derive(Debug)]
struct NonGeneric;

/// Candidate segment pairs whose bounding boxes share a grid cell.
fn candidate_pairs(points: &[[f64; 2]], pad: f64) -> Vec<(usize, usize)> {
    let m = points.len();
    let (mut lo, mut hi) = (points[0], points[0]);
    let mut total_len = 0.0;
    for i in 0..m {
        let p = points[i];
        lo = [lo[0].min(p[0]), lo[1].min(p[1])];
        hi = [hi[0].max(p[0]), hi[1].max(p[1])];
        total_len += norm2(sub2(points[(i + 1) % m], p));
    }
    let extent = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(f64::MIN_POSITIVE);
    let mean_len = total_len / m as f64;
    let cells = ((extent / (2.0 * mean_len)).ceil() as usize).clamp(1, 2048);
    let cell = extent / cells as f64;
    let index = |x: f64, origin: f64| (((x - origin) / cell).floor().max(0.0) as usize).min(cells - 1);

    let mut grid: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for i in 0..m {
        let (a, b) = (points[i], points[(i + 1) % m]);
        let (x0, x1) = (index(a[0].min(b[0]) - pad, lo[0]), index(a[0].max(b[0]) + pad, lo[0]));
        let (y0, y1) = (index(a[1].min(b[1]) - pad, lo[1]), index(a[1].max(b[1]) + pad, lo[1]));
        for x in x0..=x1 {
            for y in y0..=y1 {
                grid.entry((x, y)).or_default().push(i);
            }
        }
    }
    let mut pairs = Vec::new();
    for members in grid.values() {
        for (a, &i) in members.iter().enumerate() {
            for &k in &members[a + 1..] {
                pairs.push((i.min(k), i.max(k)));
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}

fn build_diagram(points: &[Point3], frame: Frame) -> std::result::Result<KnotDiagram, NonGeneric> {
    let m = points.len();
    let planar: Vec<[f64; 2]> = points.iter().map(|p| [p.dot(&frame.u), p.dot(&frame.v)]).collect();
    let depth: Vec<f64> = points.iter().map(|p| p.dot(&frame.view)).collect();
    let diag = bbox_diagonal(points).max(f64::MIN_POSITIVE);
    let close = DEPTH_MARGIN * diag;

    let mut crossings = Vec::new();
    for (i, k) in candidate_pairs(&planar, close) {
        let (p0, p1) = (planar[i], planar[(i + 1) % m]);
        let (q0, q1) = (planar[k], planar[(k + 1) % m]);
        let r = sub2(p1, p0);
        let s = sub2(q1, q0);
        let adjacent = k == i + 1 || (i == 0 && k == m - 1);
        let den = cross2(r, s);
        if adjacent {
            // Neighbours share a vertex; they only meet again if they fold
            // back onto each other in the projection.
            let dot = r[0] * s[0] + r[1] * s[1];
            if den.abs() <= 1e-12 * norm2(r) * norm2(s) && dot < 0.0 {
                return Err(NonGeneric);
            }
            continue;
        }
        if den.abs() <= 1e-12 * norm2(r) * norm2(s) {
            let gap = point_segment_distance2(q0, p0, p1)
                .min(point_segment_distance2(q1, p0, p1))
                .min(point_segment_distance2(p0, q0, q1))
                .min(point_segment_distance2(p1, q0, q1));
            if gap <= close {
                return Err(NonGeneric);
            }
            continue;
        }
        let qp = sub2(q0, p0);
        let t = cross2(qp, s) / den;
        let u = cross2(qp, r) / den;
        let inside = |x: f64| (-PARAM_MARGIN..=1.0 + PARAM_MARGIN).contains(&x);
        if !inside(t) || !inside(u) {
            continue;
        }
        let interior = |x: f64| (PARAM_MARGIN..=1.0 - PARAM_MARGIN).contains(&x);
        if !interior(t) || !interior(u) {
            return Err(NonGeneric);
        }
        let zi = depth[i] + t * (depth[(i + 1) % m] - depth[i]);
        let zk = depth[k] + u * (depth[(k + 1) % m] - depth[k]);
        if (zi - zk).abs() < close {
            return Err(NonGeneric);
        }
        let point = [p0[0] + t * r[0], p0[1] + t * r[1]];
        let (over, under, over_param, under_param, over_dir, under_dir) = if zi > zk {
            (i, k, t, u, r, s)
        } else {
            (k, i, u, t, s, r)
        };
        crossings.push(Crossing {
            over,
            under,
            over_param,
            under_param,
            point,
            sign: if cross2(over_dir, under_dir) > 0.0 { 1 } else { -1 },
        });
    }

    // Triple points show up as crossings that coincide in the plane.
    let mut by_x: Vec<usize> = (0..crossings.len()).collect();
    by_x.sort_by(|&a, &b| crossings[a].point[0].total_cmp(&crossings[b].point[0]));
    for (n, &a) in by_x.iter().enumerate() {
        for &b in &by_x[n + 1..] {
            if crossings[b].point[0] - crossings[a].point[0] > close {
                break;
            }
            if norm2(sub2(crossings[a].point, crossings[b].point)) <= close {
                return Err(NonGeneric);
            }
        }
    }

    let (arcs, gauss_code, incidence) = trace_strand(&crossings);
    Ok(KnotDiagram {
        frame,
        points: planar,
        depth,
        crossings,
        arcs,
        gauss_code,
        incidence,
        attempts: 1,
    })
}

type Traced = (Vec<Arc>, Vec<GaussEntry>, Vec<(usize, usize, usize)>);

/// Walks the strand from its first point, splitting it into arcs at every
/// undercrossing.
fn trace_strand(crossings: &[Crossing]) -> Traced {
    let c = crossings.len();
    let mut events: Vec<(usize, f64, usize, bool)> = Vec::with_capacity(2 * c);
    for (idx, x) in crossings.iter().enumerate() {
        events.push((x.over, x.over_param, idx, true));
        events.push((x.under, x.under_param, idx, false));
    }
    events.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));

    let gauss_code = events
        .iter()
        .map(|&(_, _, crossing, over)| GaussEntry { crossing, over })
        .collect();
    if c == 0 {
        return (Vec::new(), gauss_code, Vec::new());
    }

    // Arc a starts at the a-th undercrossing and ends at the next one.
    let unders: Vec<usize> = events.iter().filter(|e| !e.3).map(|e| e.2).collect();
    let mut under_rank = vec![0usize; c];
    for (rank, &x) in unders.iter().enumerate() {
        under_rank[x] = rank;
    }
    let arcs = (0..c)
        .map(|a| Arc {
            from_crossing: unders[a],
            to_crossing: unders[(a + 1) % c],
        })
        .collect();

    let mut over_arc = vec![0usize; c];
    let mut seen_unders = 0usize;
    for &(_, _, x, over) in &events {
        if over {
            over_arc[x] = (seen_unders + c - 1) % c;
        } else {
            seen_unders += 1;
        }
    }
    let incidence = (0..c)
        .map(|x| {
            let out = under_rank[x];
            (over_arc[x], (out + c - 1) % c, out)
        })
        .collect();
    (arcs, gauss_code, incidence)
}

/// Diagram of the closed polyline through `points` seen through `frame`.
pub fn project_along(points: &[Point3], frame: Frame) -> Result<KnotDiagram> {
    check_polyline(points)?;
    build_diagram(points, frame).map_err(|_| Error::ProjectionFailure(1))
}

/// Diagram of the closed polyline through `points` (no repeated endpoint)
/// along the first generic direction drawn from `seed`.
pub fn project(points: &[Point3], seed: u64) -> Result<KnotDiagram> {
    check_polyline(points)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=MAX_PROJECTION_ATTEMPTS {
        let view = random_direction(&mut rng);
        if let Ok(mut d) = build_diagram(points, Frame::looking_along(view)) {
            d.attempts = attempt;
            return Ok(d);
        }
    }
    Err(Error::ProjectionFailure(MAX_PROJECTION_ATTEMPTS))
}

fn check_polyline(points: &[Point3]) -> Result<()> {
    if points.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "a closed polyline needs at least 3 points, got {}",
            points.len()
        )));
    }
    if let Some(i) = points.iter().position(|p| !p.is_finite()) {
        return Err(Error::InvalidInput(format!("point {i} is not finite")));
    }
    Ok(())
}

/// Uniform direction on the sphere by rejection from the cube.
pub fn random_direction<R: Rng>(rng: &mut R) -> Point3 {
    loop {
        let p = Point3::new(
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
        );
        let n = p.norm();
        if n > 1e-3 && n <= 1.0 {
            return p / n;
        }
    }
}

/// Knot determinant of a diagram; 1 when there are no crossings.
pub fn determinant(d: &KnotDiagram) -> u64 {
    if d.crossings.is_empty() {
        return 1;
    }
    let m = d.coloring_matrix();
    let last = m.len() - 1;
    abs_minor(&m, last, last)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticsReport {
    pub j: u32,
    pub samples: usize,
    pub crossings: usize,
    /// Odd for every knot diagram.
    pub determinant: u64,
    pub seed: u64,
    pub attempts: usize,
    pub view: Point3,
}

/// Smallest sample count accepted for `diagnose_iteration` at level `j`.
pub fn sample_floor(p: &PolyKnot, j: u32) -> usize {
    (p.len() * SAMPLES_PER_EDGE) << j
}

/// Refines `p` `j` times, samples its Bézier curve into a closed polyline of
/// `samples` points and computes the determinant of a seeded projection.
pub fn diagnose_iteration(p: &PolyKnot, j: u32, samples: usize, seed: u64) -> Result<DiagnosticsReport> {
    let floor = sample_floor(p, j);
    if samples < floor {
        return Err(Error::Domain(format!(
            "{samples} samples is below the floor of {floor} for level {j}"
        )));
    }
    let curve = p.refine(j).bezier();
    let mut polyline = curve.sample(samples + 1)?;
    polyline.pop();
    let d = project(&polyline, seed)?;
    Ok(DiagnosticsReport {
        j,
        samples,
        crossings: d.crossing_count(),
        determinant: determinant(&d),
        seed,
        attempts: d.attempts,
        view: d.frame.view,
    })
}

/// Determinant of the stick knot itself.
pub fn polygon_determinant(p: &PolyKnot, seed: u64) -> Result<u64> {
    Ok(determinant(&project(p.vertices(), seed)?))
}
