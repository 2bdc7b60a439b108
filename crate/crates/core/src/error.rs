use thiserror::Error;

/// Errors raised by generators, stochastic kernels, benchmarks and media I/O.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A parameter combination that can never be valid (bad base, bad tap mask, ...).
    #[error("configuration error: {0}")]
    Config(String),
    /// Operands that do not fit together (length or dimension mismatch, value out of range).
    #[error("domain error: {0}")]
    Domain(String),
    /// A request that exceeds what a generator can produce (count past one period, ...).
    #[error("range error: {0}")]
    Range(String),
    /// A generator ran out of values or gave up.
    #[error("generation error: {0}")]
    Generation(String),
    /// Malformed input bytes; `offset` is the byte position where parsing stopped.
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    /// A file or directory could not be read or written.
    #[error("I/O error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn range(msg: impl Into<String>) -> Self {
        Error::Range(msg.into())
    }

    pub(crate) fn generation(msg: impl Into<String>) -> Self {
        Error::Generation(msg.into())
    }

    pub(crate) fn parse(offset: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: msg.into(),
        }
    }

    pub(crate) fn io(path: &std::path::Path, err: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            message: err.to_string(),
        }
    }
}
