//! Error type shared by all modules.

use thiserror::Error;

/// Errors produced by validation, domain checks, and consistency gates.
#[derive(Debug, Error)]
pub enum Error {
    /// An input failed structural validation (shape, finiteness, norm).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative kernel failed to converge within its iteration budget.
    #[error("no convergence: {0}")]
    NoConvergence(String),

    /// A run-time self-check failed; carries the offending residuals.
    #[error(
        "consistency failure for (m, n) = ({m}, {n}): \
         |E - (I1 - I2)| = {residual_identity:.3e}, \
         |I2 - I2_laguerre|/|I2| = {residual_laguerre:.3e}"
    )]
    Consistency {
        m: u64,
        n: u64,
        residual_identity: f64,
        residual_laguerre: f64,
    },

    /// A configuration value (geometry spec, CLI option, config file) is unusable.
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
