use thiserror::Error;

/// Errors raised by constructors and operations in this crate.
///
/// `Domain` means the input is well formed but lies outside the set the
/// operation is defined on; `InvalidInput` means the input is malformed
/// (NaN, infinite, non-positive scale, ...).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("quadrature did not converge: {0}")]
    Convergence(String),

    #[error("empty input: {0}")]
    EmptyInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn ensure_finite(name: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{name} must be finite, got {value}")))
    }
}
