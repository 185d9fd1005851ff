use thiserror::Error;

use crate::tetra::TetraClass;

/// Errors produced by the geometry engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The tetrahedron is not of the class the operation requires.
    #[error("expected a {expected} tetrahedron, got {}", .found.kind)]
    WrongClass {
        expected: &'static str,
        found: Box<TetraClass>,
    },

    /// An iterative or adaptive method did not reach its tolerance.
    #[error("{method} did not converge: achieved error {achieved:e}, requested {requested:e}")]
    NoConvergence {
        method: &'static str,
        achieved: f64,
        requested: f64,
    },

    /// The holonomy system is degenerate for this input.
    #[error("degenerate holonomy system: {0}")]
    Degenerate(String),

    /// A root of the holonomy quadratic is off the unit circle, so Z is not real.
    #[error("holonomy root off the unit circle: |z| - 1 = {deviation:e}")]
    NonRealAngle { deviation: f64 },

    /// A numerical step failed (eigen-decomposition, singular matrix, ...).
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite, got {value}")))
    }
}
