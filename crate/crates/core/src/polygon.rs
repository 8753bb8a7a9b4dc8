//! Stick knots and their refinement by midpoint insertion.

use crate::bezier::BezierKnot;
use crate::error::{Error, Result, ValidationError};
use crate::geometry::{seg_seg_distance, Point3, Segment3};
use crate::tolerance::Tolerance;

/// Vertices of the seven-stick figure-eight knot used as the running example.
pub const FIGURE_EIGHT_STICK: [[f64; 3]; 7] = [
    [1.3076, -3.3320, -2.5072],
    [-1.3841, 4.6826, 0.9135],
    [-3.2983, -4.0567, 2.6862],
    [-0.1233, 2.7683, -2.4636],
    [3.9080, -4.5334, 1.2264],
    [-3.9360, -0.4383, -0.9834],
    [3.2182, 4.2961, 2.1125],
];

/// A closed polygonal knot. The closing edge from the last vertex back to the
/// first is implicit.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyKnot {
    vertices: Vec<Point3>,
    level: u32,
    base_n: usize,
}

impl PolyKnot {
    /// Checks the admissibility rules and returns a level-0 knot.
    ///
    /// An explicitly repeated closing vertex is dropped first.
    pub fn validate(points: &[Point3]) -> Result<Self> {
        if let Some(i) = points.iter().position(|p| !p.is_finite()) {
            return Err(ValidationError::NonFinite(i).into());
        }
        let tol = Tolerance::for_points(points);
        let eps = tol.abs();
        let mut vertices = points.to_vec();
        if vertices.len() > 1 && vertices[0].distance(vertices.last().unwrap()) <= eps {
            vertices.pop();
        }
        let n = vertices.len();
        if n < 4 {
            return Err(ValidationError::TooFewVertices(n).into());
        }

        for i in 0..n {
            for k in i + 1..n {
                if vertices[i].distance(&vertices[k]) <= eps {
                    return Err(ValidationError::DuplicateVertices(i, k).into());
                }
            }
        }

        for i in 0..n {
            for k in i + 1..n {
                for l in k + 1..n {
                    if collinear(&vertices[i], &vertices[k], &vertices[l], eps) {
                        return Err(ValidationError::CollinearTriple(i, k, l).into());
                    }
                }
            }
        }

        let knot = PolyKnot {
            vertices,
            level: 0,
            base_n: n,
        };
        if let Some((i, k)) = knot.first_intersection(eps) {
            return Err(ValidationError::SelfIntersection(i, k).into());
        }
        Ok(knot)
    }

    /// Pair of non-adjacent edges closer than `eps`, if any. Adjacent edges
    /// can only overlap when their three vertices are collinear, which
    /// validation already rules out.
    fn first_intersection(&self, eps: f64) -> Option<(usize, usize)> {
        let edges = self.edges();
        let n = edges.len();
        for i in 0..n {
            for k in i + 2..n {
                if i == 0 && k == n - 1 {
                    continue;
                }
                if seg_seg_distance(&edges[i], &edges[k]) <= eps {
                    return Some((i, k));
                }
            }
        }
        None
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Number of insertions applied since validation.
    pub fn level(&self) -> u32 {
        self.level
    }

    /// Vertex count of the validated polygon, before any insertion.
    pub fn base_n(&self) -> usize {
        self.base_n
    }

    /// Edges in order, ending with the closing edge.
    pub fn edges(&self) -> Vec<Segment3> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| Segment3 {
                a: self.vertices[i],
                b: self.vertices[(i + 1) % n],
            })
            .collect()
    }

    /// Vertices followed by a repeat of the first, i.e. the control points of
    /// the closed Bézier curve.
    pub fn closed_control(&self) -> Vec<Point3> {
        let mut pts = self.vertices.clone();
        pts.push(self.vertices[0]);
        pts
    }

    pub fn bezier(&self) -> BezierKnot {
        BezierKnot::new(self.closed_control(), true)
            .expect("closed control list repeats its first point")
    }

    /// Inserts the midpoint of every edge, including the closing edge.
    pub fn collinear_insert(&self) -> PolyKnot {
        let n = self.vertices.len();
        let mut vertices = Vec::with_capacity(2 * n);
        for i in 0..n {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
            vertices.push(a);
            vertices.push(a.midpoint(&b));
        }
        PolyKnot {
            vertices,
            level: self.level + 1,
            base_n: self.base_n,
        }
    }

    pub fn refine(&self, times: u32) -> PolyKnot {
        (0..times).fold(self.clone(), |p, _| p.collinear_insert())
    }

    /// Uniform parametrization over `[0, 1]`: vertex `k` sits at
    /// `k / len()` and `t = 1` closes back to vertex 0.
    pub fn param(&self, t: f64) -> Result<Point3> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::Domain(format!("parameter {t} outside [0, 1]")));
        }
        let n = self.vertices.len();
        let x = t * n as f64;
        let k = (x.floor() as usize).min(n - 1);
        let (a, b) = (self.vertices[k], self.vertices[(k + 1) % n]);
        Ok(a.lerp(&b, x - k as f64))
    }

    /// Shortest edge length, closing edge included.
    pub fn min_edge_length(&self) -> f64 {
        self.edges()
            .iter()
            .map(Segment3::length)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn max_edge_length(&self) -> f64 {
        self.edges().iter().map(Segment3::length).fold(0.0, f64::max)
    }

    /// Copy with every coordinate multiplied by `s > 0`.
    pub fn scaled(&self, s: f64) -> PolyKnot {
        PolyKnot {
            vertices: self.vertices.iter().map(|p| *p * s).collect(),
            ..self.clone()
        }
    }

    pub fn tolerance(&self) -> Tolerance {
        Tolerance::for_points(&self.vertices)
    }

    pub fn figure_eight() -> PolyKnot {
        let pts: Vec<Point3> = FIGURE_EIGHT_STICK.iter().copied().map(Point3::from).collect();
        PolyKnot::validate(&pts).expect("reference polygon is admissible")
    }
}

fn collinear(a: &Point3, b: &Point3, c: &Point3, eps: f64) -> bool {
    let ab = *b - *a;
    let ac = *c - *a;
    let bc = *c - *b;
    let longest = ab.norm().max(ac.norm()).max(bc.norm());
    // height over the longest side
    ab.cross(&ac).norm() / longest <= eps
}
