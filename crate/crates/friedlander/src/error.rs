use num_complex::Complex64;
use thiserror::Error;

/// Library-wide error type.
///
/// The CLI maps `Argument` to exit code 2 and `Accuracy` to exit code 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("argument error: {0}")]
    Argument(String),

    /// Quadrature or root polishing did not reach the requested tolerance.
    /// Carries the best estimate obtained and the error bound reached.
    #[error("accuracy error: {context} (best estimate {best}, bound {bound:e})")]
    Accuracy {
        context: String,
        best: Complex64,
        bound: f64,
    },

    /// Asymptotic parameter too small for the requested representation.
    #[error("regime error: {0}")]
    Regime(String),

    /// Reflection window does not cover the significant terms.
    #[error("window error: {0}")]
    Window(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}
