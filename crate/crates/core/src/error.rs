use thiserror::Error;

/// Errors produced by the model, estimation and scenario layers.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain where a formula is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A value falls outside a tabulated or preset range.
    #[error("range error: {0}")]
    Range(String),

    /// A scenario or model configuration is unusable.
    #[error("configuration error: {0}")]
    Config(String),

    /// A Monte-Carlo estimate could not be formed.
    #[error("estimation error: {0}")]
    Estimation(String),

    /// A data file could not be parsed.
    #[error("{source_name}:{line}: {message}")]
    Parse {
        source_name: String,
        line: u64,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
