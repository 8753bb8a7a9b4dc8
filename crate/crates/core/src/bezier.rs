//! Bézier curves over `[0, 1]`: evaluation, hodographs, second differences.

use crate::error::{Error, Result};
use crate::geometry::Point3;

/// Bézier curve of degree `control.len() - 1`.
///
/// A closed curve stores its closing control point explicitly, so
/// `control[0] == control[n]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BezierKnot {
    control: Vec<Point3>,
    closed: bool,
}

impl BezierKnot {
    pub fn new(control: Vec<Point3>, closed: bool) -> Result<Self> {
        if control.is_empty() {
            return Err(Error::InvalidInput("a Bézier curve needs control points".into()));
        }
        if let Some(i) = control.iter().position(|p| !p.is_finite()) {
            return Err(Error::InvalidInput(format!("control point {i} is not finite")));
        }
        if closed && (control.len() < 2 || control.first() != control.last()) {
            return Err(Error::InvalidInput(
                "closed curve must repeat its first control point at the end".into(),
            ));
        }
        Ok(Self { control, closed })
    }

    pub fn control(&self) -> &[Point3] {
        &self.control
    }

    pub fn degree(&self) -> usize {
        self.control.len() - 1
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Point at `t` by repeated linear interpolation.
    pub fn eval(&self, t: f64) -> Result<Point3> {
        check_param(t)?;
        if t == 1.0 {
            return Ok(self.control[self.degree()]);
        }
        let mut work = self.control.clone();
        for level in (1..work.len()).rev() {
            for i in 0..level {
                work[i] = work[i].lerp(&work[i + 1], t);
            }
        }
        Ok(work[0])
    }

    /// Point at `t` as a Bernstein-weighted sum of the control points.
    ///
    /// Weights are generated outward from the mode of the binomial
    /// distribution and truncated once they fall below `1e-18` of the peak, so
    /// the cost per point grows like `sqrt(n)`. Used wherever the degree is
    /// too large for the quadratic triangular scheme.
    pub fn eval_bernstein(&self, t: f64) -> Result<Point3> {
        check_param(t)?;
        Ok(bernstein_sum(&self.control, t))
    }

    /// Derivative curve, with control points `n (P_i - P_{i-1})`.
    pub fn hodograph(&self) -> BezierKnot {
        self.scaled_hodograph(self.degree() as f64)
    }

    /// Control points `factor (P_i - P_{i-1})`, i = 1..n.
    ///
    /// With `factor` equal to the degree this is the true hodograph. Refined
    /// curves are compared against the base polygon's hodograph with `factor`
    /// fixed at the base degree, which is the derivative divided by `2^j`.
    pub fn scaled_hodograph(&self, factor: f64) -> BezierKnot {
        let control = if self.control.len() == 1 {
            vec![Point3::ZERO]
        } else {
            self.control
                .windows(2)
                .map(|w| (w[1] - w[0]) * factor)
                .collect()
        };
        BezierKnot {
            control,
            closed: false,
        }
    }

    /// `m` evenly spaced points `B(k / (m - 1))`.
    pub fn sample(&self, m: usize) -> Result<Vec<Point3>> {
        if m < 2 {
            return Err(Error::Domain(format!("sample count must be at least 2, got {m}")));
        }
        let last = (m - 1) as f64;
        Ok((0..m)
            .map(|k| bernstein_sum(&self.control, k as f64 / last))
            .collect())
    }

    /// Point of the uniformly parametrized control polygon at `t`.
    pub fn control_polygon_point(&self, t: f64) -> Result<Point3> {
        polyline_param(&self.control, t)
    }
}

fn check_param(t: f64) -> Result<()> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(Error::Domain(format!("parameter {t} outside [0, 1]")))
    }
}

fn bernstein_sum(control: &[Point3], t: f64) -> Point3 {
    let n = control.len() - 1;
    if t <= 0.0 || n == 0 {
        return control[0];
    }
    if t >= 1.0 {
        return control[n];
    }
    const CUTOFF: f64 = 1e-18;
    let ratio = t / (1.0 - t);
    let mode = (((n + 1) as f64 * t).floor() as usize).min(n);

    let mut total = 1.0;
    let mut acc = control[mode];
    let mut w = 1.0;
    for i in mode..n {
        w *= (n - i) as f64 / (i + 1) as f64 * ratio;
        if w < CUTOFF {
            break;
        }
        total += w;
        acc += control[i + 1] * w;
    }
    w = 1.0;
    for i in (1..=mode).rev() {
        w *= i as f64 / (n - i + 1) as f64 / ratio;
        if w < CUTOFF {
            break;
        }
        total += w;
        acc += control[i - 1] * w;
    }
    acc / total
}

/// Point at `t` of the polyline through `points`, with vertex `k` at
/// `t = k / (len - 1)`.
pub fn polyline_param(points: &[Point3], t: f64) -> Result<Point3> {
    check_param(t)?;
    let edges = points.len().saturating_sub(1);
    if edges == 0 {
        return points
            .first()
            .copied()
            .ok_or_else(|| Error::InvalidInput("empty polyline".into()));
    }
    let x = t * edges as f64;
    let k = (x.floor() as usize).min(edges - 1);
    Ok(points[k].lerp(&points[k + 1], x - k as f64))
}

/// The second forward differences of a point sequence and their
/// max-over-coordinates 1-norm `Ω`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffVector {
    pub entries: Vec<Point3>,
    /// Coordinate-wise 1-norms `[‖Δ₂x‖₁, ‖Δ₂y‖₁, ‖Δ₂z‖₁]`.
    pub norms: [f64; 3],
    pub omega: f64,
}

/// `Δ₂P_i = P_{i+2} - 2 P_{i+1} + P_i` for i = 0..n-2. The sequence is not
/// wrapped; a closed curve's repeated endpoint is just another entry.
pub fn second_diff(points: &[Point3]) -> Result<DiffVector> {
    if points.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "second differences need at least 3 points, got {}",
            points.len()
        )));
    }
    let entries: Vec<Point3> = points
        .windows(3)
        .map(|w| w[2] - w[1] * 2.0 + w[0])
        .collect();
    let sums = entries
        .iter()
        .fold(Point3::ZERO, |acc, e| acc + e.abs());
    let norms = sums.coords();
    let omega = norms.iter().copied().fold(0.0, f64::max);
    Ok(DiffVector {
        entries,
        norms,
        omega,
    })
}

/// Largest Euclidean gap between `curve` and `other` over `m` evenly spaced
/// parameters. A lower bound on the sup-norm distance.
pub fn max_pointwise_gap<F>(curve: &BezierKnot, other: F, m: usize) -> Result<f64>
where
    F: Fn(f64) -> Result<Point3>,
{
    if m < 2 {
        return Err(Error::Domain(format!("sample count must be at least 2, got {m}")));
    }
    let last = (m - 1) as f64;
    let mut gap: f64 = 0.0;
    for k in 0..m {
        let t = k as f64 / last;
        gap = gap.max(bernstein_sum(&curve.control, t).distance(&other(t)?));
    }
    Ok(gap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(raw: &[[f64; 3]]) -> Vec<Point3> {
        raw.iter().copied().map(Point3::from).collect()
    }

    fn quadratic() -> BezierKnot {
        BezierKnot::new(pts(&[[0., 0., 0.], [1., 0., 0.], [1., 1., 0.]]), false).unwrap()
    }

    fn binomial(n: usize, k: usize) -> f64 {
        (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    }

    // Direct Bernstein sum with exact binomials; the reference for evaluation.
    fn bernstein_oracle(control: &[Point3], t: f64) -> Point3 {
        let n = control.len() - 1;
        control.iter().enumerate().fold(Point3::ZERO, |acc, (i, p)| {
            acc + *p * (binomial(n, i) * t.powi(i as i32) * (1.0 - t).powi((n - i) as i32))
        })
    }

    #[test]
    fn endpoints_interpolate() {
        let c = quadratic();
        assert_eq!(c.eval(0.0).unwrap(), c.control()[0]);
        assert_eq!(c.eval(1.0).unwrap(), c.control()[2]);
    }

    #[test]
    fn quadratic_midpoint() {
        let p = quadratic().eval(0.5).unwrap();
        assert!((p - Point3::new(0.75, 0.25, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn out_of_range_parameter() {
        assert!(matches!(quadratic().eval(1.5), Err(Error::Domain(_))));
        assert!(matches!(quadratic().eval(-0.1), Err(Error::Domain(_))));
        assert!(quadratic().eval(f64::NAN).is_err());
    }

    #[test]
    fn closed_requires_repeated_endpoint() {
        assert!(BezierKnot::new(pts(&[[0., 0., 0.], [1., 0., 0.]]), true).is_err());
        assert!(BezierKnot::new(pts(&[[0., 0., 0.], [1., 0., 0.], [0., 0., 0.]]), true).is_ok());
    }

    #[test]
    fn hodograph_of_line_is_constant() {
        let line = BezierKnot::new(pts(&[[1., 2., 3.], [4., 0., 3.]]), false).unwrap();
        let h = line.hodograph();
        assert_eq!(h.control(), &[Point3::new(3., -2., 0.)]);
        assert_eq!(h.eval(0.3).unwrap(), Point3::new(3., -2., 0.));
    }

    #[test]
    fn hodograph_of_constant_is_zero() {
        let c = BezierKnot::new(vec![Point3::new(1., 1., 1.); 4], false).unwrap();
        assert!(c.hodograph().control().iter().all(|p| *p == Point3::ZERO));
    }

    #[test]
    fn sample_counts() {
        let c = quadratic();
        assert_eq!(c.sample(2).unwrap(), vec![c.control()[0], c.control()[2]]);
        let line = BezierKnot::new(pts(&[[0., 0., 0.], [2., 0., 0.]]), false).unwrap();
        let s = line.sample(3).unwrap();
        assert_eq!(s[1], Point3::new(1., 0., 0.));
        let five = c.sample(5).unwrap();
        assert!((five[1] - bernstein_oracle(c.control(), 0.25)).norm() < 1e-12);
        assert!(c.sample(1).is_err());
    }

    #[test]
    fn bernstein_path_matches_triangular_scheme_at_high_degree() {
        // A deterministic wiggly control polygon of degree 112.
        let control: Vec<Point3> = (0..=112)
            .map(|i| {
                let s = i as f64;
                Point3::new((0.7 * s).sin() * 5.0, (0.3 * s).cos() * 4.0, (s * 0.11).sin() * 3.0)
            })
            .collect();
        let c = BezierKnot::new(control, false).unwrap();
        for k in 0..=200 {
            let t = k as f64 / 200.0;
            let a = c.eval(t).unwrap();
            let b = c.eval_bernstein(t).unwrap();
            assert!((a - b).norm() < 1e-12, "t={t}: {a:?} vs {b:?}");
        }
    }

    #[test]
    fn affine_sequence_has_zero_omega() {
        let line: Vec<Point3> = (0..6)
            .map(|i| Point3::new(1.0 + 2.0 * i as f64, -0.5 * i as f64, 3.0))
            .collect();
        assert_eq!(second_diff(&line).unwrap().omega, 0.0);
        assert!(second_diff(&line[..2]).is_err());
    }

    #[test]
    fn polygon_gap_of_linear_curve_is_zero() {
        let line = BezierKnot::new(pts(&[[0., 0., 0.], [2., 1., 0.]]), false).unwrap();
        let gap = max_pointwise_gap(&line, |t| line.control_polygon_point(t), 101).unwrap();
        assert!(gap < 1e-15);
    }
}
