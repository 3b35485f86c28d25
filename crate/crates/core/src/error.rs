use thiserror::Error;

/// Errors raised by the bound engines and the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A structurally invalid request, such as a sequence order that is too small.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The two partitions handed to the two-partition engine do not interleave.
    #[error("partitions do not interleave: {0}")]
    NotInterleaved(String),

    #[error("unknown function `{0}`")]
    UnknownFunction(String),

    #[error("unknown inequality family `{0}`")]
    UnknownFamily(String),

    #[error("cannot parse `{0}`")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// True for errors caused by how the request was spelled rather than by its values.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::UnknownFunction(_) | Error::UnknownFamily(_) | Error::Parse(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
