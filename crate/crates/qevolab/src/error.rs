//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by instance validation, simulator guards and the
/// benchmark harness.
///
/// The CLI maps these onto exit codes: `Config` exits 2, `Capacity` and
/// `Size` exit 3, everything else exits 4.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violates a documented precondition (length mismatch,
    /// non-permutation tour, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Malformed or inconsistent configuration (unknown algorithm id,
    /// incompatible problem, bad file).
    #[error("configuration error: {0}")]
    Config(String),

    /// A resource guard was exceeded (register width, DP table size).
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A problem is too large for its exact oracle.
    #[error("size limit exceeded: {0}")]
    Size(String),

    /// A value does not fit the register that must hold it.
    #[error("out of range: {0}")]
    Range(String),

    /// A statevector precondition does not hold (e.g. fitness register
    /// entangled where a disentangled register is required).
    #[error("invalid state: {0}")]
    State(String),

    /// A numeric-domain precondition does not hold.
    #[error("domain error: {0}")]
    Domain(String),

    /// Failure reading or writing result files.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
