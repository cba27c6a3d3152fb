use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("leading coefficient {c4:e} is negligible relative to the other coefficients")]
    DegenerateLeadingCoefficient { c4: f64 },

    #[error("system is not elliptic")]
    NotElliptic,

    #[error("transformation matrix is singular (det = {det:e})")]
    SingularTransform { det: f64 },

    #[error("Moebius map has a pole at the given point")]
    PoleHit,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("left multiplier diag(sigma+tau, sigma-tau) is singular")]
    DegenerateMultiplier,

    #[error("parameters (tau={tau}, sigma={sigma}) lie outside 0 <= tau < sigma < 1")]
    OutOfTheoremRange { tau: f64, sigma: f64 },

    #[error("direct solver failed: relative residual {residual:e}")]
    SolverDiverged { residual: f64 },

    #[error("conjugate gradient did not converge in {iterations} iterations (gradient norm {gradient_norm:e})")]
    MaxIterations { iterations: usize, gradient_norm: f64 },

    #[error("energy matrix is not non-negatively determined")]
    IndefiniteEnergy,

    #[error("invalid boundary data: {0}")]
    InvalidBoundary(String),

    #[error("grid must have at least 3 interior points per side (got {0})")]
    GridTooSmall(usize),
}
