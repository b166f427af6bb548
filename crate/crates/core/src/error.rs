use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Operand dimensions do not fit together.
    #[error("shape error: {0}")]
    Shape(String),

    /// A physical parameter is outside its domain (e.g. speed >= c).
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed user input, including state files.
    #[error("invalid input: {0}")]
    Input(String),

    /// A matrix failed density-matrix validation.
    #[error("validation error: {0}")]
    Validation(String),

    /// Non-convergence or a radicand that is negative beyond rounding noise.
    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
}

impl Error {
    /// True for failures the CLI maps to the "numeric failure" exit code.
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::Numeric(_))
    }
}
