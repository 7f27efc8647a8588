use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A numeric input lies outside the domain where a formula is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The compressed pulse reaches its focus: w^2 = 1 - s*psi0*phi is no longer positive.
    #[error("compression singularity: w^2 = {w2} <= 0 at psi0 = {psi0}, phi = {phi}")]
    CompressionSingularity { psi0: f64, phi: f64, w2: f64 },

    #[error("grid cell (row {row}, col {col}) failed: {source}")]
    Cell {
        row: usize,
        col: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Config(#[from] ConfigError),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("serialization failed: {0}")]
    Serialize(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Process exit code for the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 2,
            Error::Domain(_) | Error::CompressionSingularity { .. } | Error::Cell { .. } => 3,
            Error::Io { .. } | Error::Serialize(_) => 1,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid field `{field}`: {reason}")]
    Invalid { field: String, reason: String },

    #[error("unknown field `{0}`")]
    UnknownField(String),
}

impl ConfigError {
    pub fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        ConfigError::Invalid {
            field: field.into(),
            reason: reason.into(),
        }
    }
}
