use thiserror::Error;

/// Errors raised by the library.
///
/// Every variant is a domain or numerical failure; nothing here wraps I/O.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A P-value outside the half-open interval (0, 1].
    #[error("P-value must lie in the interval (0, 1], got {0}")]
    InvalidPValue(f64),

    /// A surprisal that is negative or not finite.
    #[error("S-value must be a finite non-negative number, got {0}")]
    InvalidSValue(f64),

    /// An argument outside the domain of the requested operation.
    #[error("{0}")]
    Domain(String),

    /// An iterative kernel did not converge within its iteration budget.
    #[error("{routine} did not converge within {iterations} iterations")]
    NoConvergence {
        routine: &'static str,
        iterations: usize,
    },

    /// An operation that needs at least one study or sample got none.
    #[error("{0} requires at least one input")]
    Empty(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
