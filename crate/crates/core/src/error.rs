//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Argument on (or too close to) the branch cut of a special function.
    #[error("branch error: {0}")]
    Branch(String),

    /// Argument outside the configured validity range of an evaluation path.
    #[error("range error: {0}")]
    Range(String),

    /// Kernel evaluated at a singular point coincidence.
    #[error("singularity error: {0}")]
    Singularity(String),

    /// Malformed or inconsistent configuration input.
    #[error("config error: {0}")]
    Config(String),

    /// Invalid discretization or solver parameter.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// The discrete operator 1+B(k) is (nearly) singular: possible point of
    /// the exceptional set or a bound state.
    #[error("near-singular system (condition estimate {cond:.3e}): {context}")]
    NearSingular { cond: f64, context: String },

    /// An iterative scheme failed to converge or a numerical contract broke.
    #[error("numerical error: {0}")]
    Numerics(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
