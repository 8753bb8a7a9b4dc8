//! Closed-form convergence bounds for collinear insertion.
//!
//! `N₁(2k) = C(2k, k) · 2k / 2^(2k+2)` bounds the distance between a Bézier
//! curve of degree `2k` and its control polygon in units of the second
//! difference norm `Ω`. Every refinement doubles the degree, so only even
//! arguments occur.

use crate::error::{Error, Result};

/// Largest argument `n1_exact` accepts. Beyond this only the upper bound is
/// used.
pub const N1_EXACT_MAX: u64 = 1 << 10;

/// Inputs shared by the insertion and hodograph rate bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundInputs {
    /// Vertex count of the base polygon.
    pub n: usize,
    /// Insertion level.
    pub j: u32,
    pub omega1: f64,
    pub omega2: f64,
    /// Shortest edge of the base polygon.
    pub lambda: f64,
}

impl BoundInputs {
    pub fn new(n: usize, j: u32, omega1: f64, omega2: f64, lambda: f64) -> Result<Self> {
        if n < 4 {
            return Err(Error::Domain(format!("base degree must be at least 4, got {n}")));
        }
        if !(omega1 >= 0.0 && omega2 >= 0.0) {
            return Err(Error::Domain("difference norms must be nonnegative".into()));
        }
        if !(lambda > 0.0) {
            return Err(Error::Domain(format!("shortest edge must be positive, got {lambda}")));
        }
        Ok(Self {
            n,
            j,
            omega1,
            omega2,
            lambda,
        })
    }

    pub fn at_level(self, j: u32) -> Self {
        Self { j, ..self }
    }
}

/// `4^k / sqrt(2k + 1)`, an upper bound on the central binomial coefficient.
pub fn central_binom_upper(k: u32) -> f64 {
    4f64.powi(k as i32) / (2.0 * k as f64 + 1.0).sqrt()
}

/// `N₁(2k)` through `C(2k,k) / 4^k = Π (2i - 1) / (2i)`.
pub fn n1_exact(two_k: u64) -> Result<f64> {
    if two_k < 2 || two_k % 2 != 0 {
        return Err(Error::Domain(format!("N1 needs an even argument >= 2, got {two_k}")));
    }
    if two_k > N1_EXACT_MAX {
        return Err(Error::Domain(format!(
            "N1 argument {two_k} exceeds {N1_EXACT_MAX}; use the upper bound"
        )));
    }
    let k = two_k / 2;
    let ratio: f64 = (1..=k).map(|i| (2 * i - 1) as f64 / (2 * i) as f64).product();
    Ok(ratio * two_k as f64 / 4.0)
}

/// `k / (2 sqrt(2k + 1))`, strictly above `N₁(2k)`.
pub fn n1_upper(two_k: u64) -> Result<f64> {
    if two_k < 2 || two_k % 2 != 0 {
        return Err(Error::Domain(format!("N1 needs an even argument >= 2, got {two_k}")));
    }
    let k = (two_k / 2) as f64;
    Ok(k / (2.0 * (2.0 * k + 1.0).sqrt()))
}

/// `N₁` at the even integer at or above `degree`: exact when small enough,
/// otherwise the upper bound.
pub fn n1(degree: u64) -> f64 {
    let even = (degree.max(1) + 1) & !1;
    if even <= N1_EXACT_MAX {
        n1_exact(even).expect("even and in range")
    } else {
        n1_upper(even).expect("even")
    }
}

/// Sup-norm bound `N₁(n) · Ω` between a degree-`n` curve and its control
/// polygon.
pub fn curve_polygon_bound(n: u64, omega: f64) -> Result<f64> {
    if n < 1 {
        return Err(Error::Domain("degree must be positive".into()));
    }
    if !(omega >= 0.0) {
        return Err(Error::Domain(format!("difference norm must be nonnegative, got {omega}")));
    }
    Ok(n1(n) * omega)
}

fn refined_root(n: usize, j: u32) -> f64 {
    (n as f64 * 2f64.powi(j as i32) + 1.0).sqrt()
}

/// Distance bound after `j` insertions: `(n / (4 sqrt(n 2^j + 1))) Ω₁`.
pub fn insertion_distance_bound(inputs: &BoundInputs) -> f64 {
    inputs.n as f64 / (4.0 * refined_root(inputs.n, inputs.j)) * inputs.omega1
}

/// Hodograph bound after `j` insertions:
/// `(n / (2 sqrt(n 2^j + 1))) 2^-(j-1) Ω₂`.
pub fn hodograph_rate_bound(inputs: &BoundInputs) -> f64 {
    let decay = 2f64.powi(1 - inputs.j as i32);
    inputs.n as f64 / (2.0 * refined_root(inputs.n, inputs.j)) * decay * inputs.omega2
}

/// Largest angle between a reference vector of length `b_len` and any vector
/// within distance `a_len` of it: `arcsin(a / b)`, attained when the deviation
/// is perpendicular to the result.
pub fn max_angle(a_len: f64, b_len: f64) -> Result<f64> {
    if !(a_len >= 0.0) || !(b_len > 0.0) {
        return Err(Error::Domain(format!("invalid lengths a={a_len}, b={b_len}")));
    }
    if a_len >= b_len {
        return Err(Error::AngleUndefined { a: a_len, b: b_len });
    }
    Ok((a_len / b_len).asin())
}
