use thiserror::Error;

/// Errors raised by the numerical operators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FracError {
    #[error("gamma function has a pole at x = {0}")]
    Pole(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("quadrature did not converge: estimated error {err:.3e} exceeds tolerance {tol:.3e}")]
    NonConvergence { err: f64, tol: f64 },

    #[error("extrapolation diverged: {0}")]
    Extrapolation(String),

    #[error("unknown catalog function `{0}`")]
    UnknownFunction(String),

    #[error("invalid parameters for `{name}`: {reason}")]
    InvalidParams { name: String, reason: String },

    #[error("degenerate normalization: A_{l}({alpha}) vanishes")]
    Degenerate { alpha: f64, l: u32 },

    #[error("truncation too short: {0}")]
    Truncation(String),

    #[error("integrand returned a non-finite value at t = {0}")]
    NonFinite(f64),

    #[error("stencil too close to the boundary: {0}")]
    Stencil(String),

    #[error("solution value {value:.3e} at node {index} is negative")]
    Negative { index: usize, value: f64 },

    #[error("empty window: {0}")]
    EmptyWindow(String),

    #[error("singular system: {0}")]
    Singular(String),
}

pub type Result<T> = std::result::Result<T, FracError>;

pub(crate) fn invalid(name: &str, reason: impl Into<String>) -> FracError {
    FracError::InvalidParams {
        name: name.to_string(),
        reason: reason.into(),
    }
}
