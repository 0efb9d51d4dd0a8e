use thiserror::Error;

/// Errors raised by the algebra, geometry and quadrature layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("elements belong to different algebras ({left} vs {right})")]
    AlgebraMismatch { left: String, right: String },

    #[error("coefficient vector has length {got}, algebra dimension is {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("element is outside the quadratic cone")]
    OutsideCone,

    #[error("element is not invertible in its complex plane (n(x) = {0:e})")]
    NotInvertible(f64),

    #[error("element is not an imaginary unit")]
    NotImaginaryUnit,

    #[error("point ({alpha}, {beta}) is outside the domain")]
    OutsideDomain { alpha: f64, beta: f64 },

    #[error("stem function does not vanish at the real point {alpha} (|F2| = {residual:e})")]
    RealPointResidual { alpha: f64, residual: f64 },

    #[error("stem function is not of class C1")]
    NotDifferentiable,

    #[error("finite-difference stencil at ({alpha}, {beta}) leaves the domain")]
    StencilOutsideDomain { alpha: f64, beta: f64 },

    #[error("kernel is singular: x lies on the sphere of w (|n(Delta)| = {0:e})")]
    SingularKernel(f64),

    #[error("kernel point w is real")]
    RealKernelPoint,

    #[error("angle vector out of range: {0}")]
    AngleOutOfRange(String),

    #[error("genuine imaginary sphere of dimension {0} has no angular coordinates")]
    NoAngles(usize),

    #[error("invalid genuine imaginary sphere: {0}")]
    InvalidGis(String),

    #[error("degenerate boundary tangent at t = {0}")]
    DegenerateTangent(f64),

    #[error("point is too close to the boundary (distance {distance:e} < margin {margin:e})")]
    TooCloseToBoundary { distance: f64, margin: f64 },

    #[error("point is on the wrong side of the boundary for this transform")]
    WrongSide,

    #[error("point is not on the boundary (distance {0:e})")]
    NotOnBoundary(f64),

    #[error("invalid quadrature grid: {0}")]
    InvalidGrid(String),

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("column {column}: {message}")]
    Parse { column: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
