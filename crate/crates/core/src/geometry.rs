//! Points, segments and the distance computations the certificate relies on.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::tolerance::Tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const ZERO: Point3 = Point3 { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn coords(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn dot(&self, other: &Point3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &Point3) -> Point3 {
        Point3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn distance(&self, other: &Point3) -> f64 {
        (*self - *other).norm()
    }

    pub fn lerp(&self, other: &Point3, t: f64) -> Point3 {
        *self + (*other - *self) * t
    }

    pub fn midpoint(&self, other: &Point3) -> Point3 {
        (*self + *other) * 0.5
    }

    pub fn min(&self, other: &Point3) -> Point3 {
        Point3::new(self.x.min(other.x), self.y.min(other.y), self.z.min(other.z))
    }

    pub fn max(&self, other: &Point3) -> Point3 {
        Point3::new(self.x.max(other.x), self.y.max(other.y), self.z.max(other.z))
    }

    pub fn abs(&self) -> Point3 {
        Point3::new(self.x.abs(), self.y.abs(), self.z.abs())
    }
}

impl From<[f64; 3]> for Point3 {
    fn from(c: [f64; 3]) -> Self {
        Point3::new(c[0], c[1], c[2])
    }
}

impl Add for Point3 {
    type Output = Point3;
    fn add(self, o: Point3) -> Point3 {
        Point3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Point3 {
    fn add_assign(&mut self, o: Point3) {
        self.x += o.x;
        self.y += o.y;
        self.z += o.z;
    }
}

impl Sub for Point3 {
    type Output = Point3;
    fn sub(self, o: Point3) -> Point3 {
        Point3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Point3 {
    type Output = Point3;
    fn mul(self, s: f64) -> Point3 {
        Point3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Div<f64> for Point3 {
    type Output = Point3;
    fn div(self, s: f64) -> Point3 {
        Point3::new(self.x / s, self.y / s, self.z / s)
    }
}

impl Neg for Point3 {
    type Output = Point3;
    fn neg(self) -> Point3 {
        Point3::new(-self.x, -self.y, -self.z)
    }
}

/// A closed straight segment with distinct endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment3 {
    pub a: Point3,
    pub b: Point3,
}

impl Segment3 {
    pub fn new(a: Point3, b: Point3) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidInput("segment endpoint is not finite".into()));
        }
        if a == b {
            return Err(Error::InvalidInput("zero-length segment".into()));
        }
        Ok(Self { a, b })
    }

    pub fn direction(&self) -> Point3 {
        self.b - self.a
    }

    pub fn length(&self) -> f64 {
        self.direction().norm()
    }

    pub fn at(&self, t: f64) -> Point3 {
        self.a.lerp(&self.b, t)
    }

    /// Parameter of the point of the segment closest to `p`.
    pub fn closest_param(&self, p: &Point3) -> f64 {
        let d = self.direction();
        ((*p - self.a).dot(&d) / d.dot(&d)).clamp(0.0, 1.0)
    }

    pub fn point_distance(&self, p: &Point3) -> f64 {
        self.at(self.closest_param(p)).distance(p)
    }
}

/// Exact Euclidean distance between two closed segments.
///
/// The minimum is attained either at an endpoint of one segment or at an
/// interior critical point of both; every candidate is evaluated, so parallel
/// and nearly parallel pairs need no special casing.
pub fn seg_seg_distance(s: &Segment3, t: &Segment3) -> f64 {
    let mut best = s
        .point_distance(&t.a)
        .min(s.point_distance(&t.b))
        .min(t.point_distance(&s.a))
        .min(t.point_distance(&s.b));

    let u = s.direction();
    let v = t.direction();
    let w = s.a - t.a;
    let (a, b, c) = (u.dot(&u), u.dot(&v), v.dot(&v));
    let (d, e) = (u.dot(&w), v.dot(&w));
    let denom = a * c - b * b;
    if denom > f64::EPSILON * a * c {
        let sp = (b * e - c * d) / denom;
        let tp = (a * e - b * d) / denom;
        if (0.0..=1.0).contains(&sp) && (0.0..=1.0).contains(&tp) {
            best = best.min(s.at(sp).distance(&t.at(tp)));
        }
    }
    best
}

/// Exterior angle between consecutive directions `u` and `v`.
pub fn turning_angle(u: &Point3, v: &Point3) -> f64 {
    u.cross(v).norm().atan2(u.dot(v))
}

/// Sum of turning angles of a polyline.
///
/// For a closed curve the turn at every vertex counts, including the one where
/// the closing edge meets the first edge. A repeated closing point is ignored.
pub fn total_curvature(points: &[Point3], closed: bool) -> Result<f64> {
    let mut pts = points;
    if closed && pts.len() > 1 && pts.first() == pts.last() {
        pts = &pts[..pts.len() - 1];
    }
    if pts.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "total curvature needs at least 3 points, got {}",
            pts.len()
        )));
    }
    let n = pts.len();
    let edge_count = if closed { n } else { n - 1 };
    let edges: Vec<Point3> = (0..edge_count).map(|i| pts[(i + 1) % n] - pts[i]).collect();
    if let Some(i) = edges.iter().position(|e| e.norm() == 0.0) {
        return Err(Error::InvalidInput(format!(
            "consecutive duplicate points at index {i}"
        )));
    }
    let turns = if closed { n } else { n - 2 };
    Ok((0..turns)
        .map(|i| turning_angle(&edges[i], &edges[(i + 1) % edge_count]))
        .sum())
}

/// Maximal closed sub-segments of `s` outside every open ball of `radius`
/// around `centers`, in order along `s`.
///
/// Pieces shorter than the tolerance are dropped, so two clips meeting at a
/// single point leave nothing.
pub fn clip_segment_outside_balls(
    s: &Segment3,
    centers: &[Point3],
    radius: f64,
    tol: &Tolerance,
) -> Vec<Segment3> {
    let len = s.length();
    let d = s.direction();
    let dd = d.dot(&d);

    // Removed open parameter intervals.
    let mut removed: Vec<(f64, f64)> = Vec::new();
    if radius > 0.0 {
        for c in centers {
            // |a + t d - c|^2 < r^2
            let w = s.a - *c;
            let half_b = w.dot(&d) / dd;
            let cc = (w.dot(&w) - radius * radius) / dd;
            let disc = half_b * half_b - cc;
            if disc <= 0.0 {
                continue;
            }
            let root = disc.sqrt();
            let (lo, hi) = (-half_b - root, -half_b + root);
            if hi <= 0.0 || lo >= 1.0 {
                continue;
            }
            removed.push((lo.max(0.0), hi.min(1.0)));
        }
    }
    removed.sort_by(|x, y| x.0.total_cmp(&y.0));

    let min_len = tol.abs();
    let mut pieces = Vec::new();
    let mut cursor = 0.0;
    let mut push = |from: f64, to: f64| {
        if (to - from) * len > min_len {
            pieces.push(Segment3 {
                a: s.at(from),
                b: s.at(to),
            });
        }
    };
    for (lo, hi) in removed {
        if lo > cursor {
            push(cursor, lo);
        }
        cursor = f64::max(cursor, hi);
    }
    if cursor < 1.0 {
        push(cursor, 1.0);
    }
    pieces
}
