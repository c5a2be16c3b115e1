//! Error taxonomy: inputs rejected up front (validation) versus numerical
//! methods failing their own quality checks mid-computation.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Bad input; `field` names the offending parameter or descriptor key.
    #[error("invalid {field}: {reason}")]
    Validation { field: String, reason: String },
    /// A numerical method detected that its result cannot be trusted.
    #[error("numerical failure in {context}: {reason}")]
    Numerical { context: String, reason: String },
}

impl Error {
    pub fn validation(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub fn numerical(context: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Numerical {
            context: context.into(),
            reason: reason.into(),
        }
    }

    /// The field or context the error is attached to.
    pub fn subject(&self) -> &str {
        match self {
            Error::Validation { field, .. } => field,
            Error::Numerical { context, .. } => context,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Rejects non-finite or otherwise invalid numeric inputs with a named field.
pub(crate) fn require(cond: bool, field: &str, reason: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::validation(field, reason))
    }
}
