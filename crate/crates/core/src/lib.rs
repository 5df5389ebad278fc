//! Numerical fractional calculus.

pub mod error;
pub mod extension;
pub mod extrapolate;
pub mod fraclap;
pub mod funcspace;
pub mod grunwald;
pub mod marchaud;
pub mod quadrature;
pub mod special;
pub mod suite;
pub mod weyl;

pub use error::{FracError, Result};

/// Two sides of an identity evaluated numerically.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct IdentityCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// `|lhs - rhs|`
    pub residual: f64,
    /// Combined numerical error estimate of both sides.
    pub err_estimate: f64,
}

impl IdentityCheck {
    pub fn new(lhs: f64, rhs: f64, err_estimate: f64) -> Self {
        Self { lhs, rhs, residual: (lhs - rhs).abs(), err_estimate }
    }
}
