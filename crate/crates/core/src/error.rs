use thiserror::Error;

/// Errors raised by the evaluation, inversion and coefficient routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the region where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// A stated precondition (truncation order, sector, index) does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// No zero with the requested index exists.
    #[error("zero index out of range: {0}")]
    Index(String),
    /// Quadrature failed to reach its tolerance.
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    /// An iterative solver (Newton, bisection) failed.
    #[error("no convergence: {0}")]
    NonConvergence(String),
    /// A consistency check that cannot fail on a correct implementation.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
