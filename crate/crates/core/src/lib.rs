//! Bézier approximations of stick knots by collinear insertion.
//!
//! A closed polygonal knot is used as the control polygon of a Bézier curve.
//! Repeatedly inserting the midpoint of every edge leaves the polygon's image
//! unchanged while doubling the curve's degree, and the curves converge to the
//! polygon. This crate computes the closed-form convergence bounds, the
//! distance threshold `δ` of the polygon, and the number of insertions after
//! which the curve is guaranteed to be ambient isotopic to the polygon. A
//! diagnostics module checks knot types empirically through the knot
//! determinant of a projected diagram.

pub mod bezier;
pub mod bounds;
pub mod certificate;
pub mod diagnostics;
mod error;
pub mod geometry;
pub mod polygon;
pub mod random;
pub mod tolerance;

pub use bezier::{BezierKnot, DiffVector};
pub use certificate::{DeltaCertificate, IterationBounds, IterationInputs, TangentTest};
pub use diagnostics::{DiagnosticsReport, KnotDiagram};
pub use error::{Error, Result, ValidationError};
pub use geometry::{Point3, Segment3};
pub use polygon::PolyKnot;
pub use tolerance::Tolerance;
