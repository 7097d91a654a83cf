use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// An argument lies outside the documented evaluation envelope.
    #[error("range error: {0}")]
    Range(String),
    /// A point on a branch cut was given without choosing a side.
    #[error("branch ambiguity: {0}")]
    BranchAmbiguity(String),
    /// Newton iteration failed; carries the last iterate.
    #[error("root not found (last iterate {last})")]
    RootNotFound { last: String },
    /// Adaptive quadrature could not reach the requested tolerance.
    #[error("quadrature tolerance unreachable: estimate {estimate}, change {change}")]
    Tolerance { estimate: String, change: String },
    /// Cancellation or slow convergence exhausted the working precision.
    #[error("precision exhausted: {0}")]
    Precision(String),
    /// A quantity that must vanish did not (usually a branch bug).
    #[error("inconsistency: {0}")]
    Inconsistency(String),
    /// A contour violates the geometric requirements of the method.
    #[error("geometry error: {0}")]
    Geometry(String),
    /// A point lies where only the turning-point methods apply.
    #[error("excluded region: {0}")]
    Excluded(String),
    /// A zero search failed.
    #[error("search failed: {0}")]
    Search(String),
    /// ODE integration could not proceed.
    #[error("step size collapse: {0}")]
    Stiffness(String),
}

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
