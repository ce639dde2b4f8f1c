use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("range error: {0}")]
    Range(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("non-physical parameters: {what} = {value:e}")]
    NonPhysical { what: String, value: f64 },

    #[error("degenerate state: {0}")]
    Degenerate(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("consistency error: {0}")]
    Consistency(String),

    #[error("underdetermined fit: {usable} usable levels, need at least {needed}")]
    Underdetermined { usable: usize, needed: usize },

    #[error("fit failed: {0}")]
    FitFailed(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn non_physical(what: impl Into<String>, value: f64) -> Self {
        Error::NonPhysical {
            what: what.into(),
            value,
        }
    }
}
