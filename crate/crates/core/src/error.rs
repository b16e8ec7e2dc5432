use thiserror::Error;

use crate::quadrature::QuadratureEstimate;

/// Errors produced by the numerical kernels and distribution methods.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// Distribution or identity parameters violate their invariants.
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// The closed form only exists for a narrower parameter family.
    #[error("unsupported case: {0}")]
    Unsupported(String),

    /// Tanh-sinh refinement exhausted its level budget.
    #[error(
        "quadrature did not converge: best estimate {} (error estimate {}, {} evaluations)",
        best.value, best.abs_error_estimate, best.evaluations
    )]
    QuadratureNoConvergence { best: QuadratureEstimate },

    /// An iterative special-function evaluation did not settle.
    #[error("{0} did not converge")]
    IterationLimit(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
