use thiserror::Error;

/// Errors produced by the library.
///
/// `is_usage_error` distinguishes bad input (lookup failures, parse and
/// validation problems) from internal/resource failures; the CLI maps the
/// former to exit code 2 and the latter to exit code 1.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation error in field `{field}`: {message}")]
    Validation { field: String, message: String },

    #[error("unknown group `{name}`; nearest names: {}", suggestions.join(", "))]
    NotFound {
        name: String,
        suggestions: Vec<String>,
    },

    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("permutation degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("element is not a member of the group")]
    NotAMember,

    #[error("{what} exceeds the configured cap of {cap}")]
    ResourceCap { what: String, cap: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn validation(field: &str, message: impl Into<String>) -> Self {
        Error::Validation {
            field: field.to_string(),
            message: message.into(),
        }
    }

    /// True for errors caused by bad user input rather than internal limits.
    pub fn is_usage_error(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::Validation { .. }
                | Error::NotFound { .. }
                | Error::NotPrime(_)
                | Error::InvalidInput(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
