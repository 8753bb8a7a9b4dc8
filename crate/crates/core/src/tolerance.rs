use crate::geometry::Point3;

/// Relative tolerance shared by every geometric predicate.
///
/// Absolute thresholds are `rel * scale`, where `scale` is the bounding-box
/// diagonal of the input the predicate runs on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub scale: f64,
}

impl Tolerance {
    pub const DEFAULT_REL: f64 = 1e-9;

    pub fn new(rel: f64, scale: f64) -> Self {
        Self { rel, scale }
    }

    /// Default relative tolerance scaled to the bounding box of `points`.
    pub fn for_points(points: &[Point3]) -> Self {
        Self::new(Self::DEFAULT_REL, bbox_diagonal(points))
    }

    pub fn abs(&self) -> f64 {
        let scale = if self.scale > 0.0 { self.scale } else { 1.0 };
        self.rel * scale
    }
}

pub fn bbox_diagonal(points: &[Point3]) -> f64 {
    let Some(first) = points.first() else {
        return 0.0;
    };
    let (mut lo, mut hi) = (*first, *first);
    for p in points {
        lo = lo.min(p);
        hi = hi.max(p);
    }
    (hi - lo).norm()
}
