use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A scalar parameter violates the problem's standing assumptions.
    #[error("invalid parameter `{name}`: {reason}")]
    Parameter { name: String, reason: String },

    /// A coefficient or nonlinearity sampled negative or non-finite.
    #[error("domain violation in {what}: {reason}")]
    Domain { what: String, reason: String },

    /// Integration bounds out of order or outside the grid interval.
    #[error("integration range [{lo}, {hi}] is invalid: {reason}")]
    Range { lo: f64, hi: f64, reason: String },

    /// A quadrature that must be positive vanished.
    #[error("degenerate quantity: {0}")]
    Degenerate(String),

    /// Fixed-point iteration ran out of iterations.
    #[error("no convergence after {iterations} iterations (defect {defect:e})")]
    NonConvergence { iterations: usize, defect: f64 },

    /// The shooting trajectory left the overflow guard or became non-finite.
    #[error("shooting trajectory blew up at t = {t} (u = {value})")]
    Blowup { t: f64, value: f64 },

    /// A formula string could not be parsed.
    #[error("expression error at column {column}: {message}")]
    Expression { column: usize, message: String },
}

impl Error {
    pub(crate) fn param(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parameter {
            name: name.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn domain(what: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Domain {
            what: what.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
