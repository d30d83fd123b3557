use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoreError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("point {x} outside domain ({lo}, {hi})")]
    OutOfDomain { x: f64, lo: f64, hi: f64 },
    #[error("quadrature did not converge on [{lo}, {hi}]: estimated error {error:e}")]
    QuadratureNonConvergence { lo: f64, hi: f64, error: f64 },
    #[error("ODE step size underflow at t = {t}")]
    StepUnderflow { t: f64 },
    #[error("no bracket found: {0}")]
    NoBracket(String),
    #[error("no positive profile: {0}")]
    NoPositiveProfile(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("ill-conditioned fit (condition estimate {0:e})")]
    IllConditioned(f64),
    #[error("stencil leaves the domain at {0}")]
    StencilOutsideDomain(f64),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
