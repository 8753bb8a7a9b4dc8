use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// The clause of the stick-knot admissibility rules a point list violates.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValidationError {
    #[error("a stick knot needs at least 4 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertices {0} and {1} coincide")]
    DuplicateVertices(usize, usize),
    #[error("vertices {0}, {1} and {2} are collinear")]
    CollinearTriple(usize, usize, usize),
    #[error("edges {0} and {1} intersect")]
    SelfIntersection(usize, usize),
    #[error("coordinate of vertex {0} is not finite")]
    NonFinite(usize),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("polygon rejected: {0}")]
    Validation(#[from] ValidationError),
    #[error("angle undefined: tangent deviation {a} is not shorter than reference {b}")]
    AngleUndefined { a: f64, b: f64 },
    #[error("degenerate certificate: {0}")]
    CertificateDegenerate(String),
    #[error("no generic projection found after {0} directions")]
    ProjectionFailure(usize),
    #[error("iteration count exceeds {0}")]
    SolverOverflow(u32),
    #[error("random polygon generation gave up after {0} rejections")]
    Generation(usize),
}
