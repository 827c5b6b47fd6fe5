use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Invalid field or code parameters.
    #[error("{0}")]
    Parameter(String),

    #[error("field size q = {q} exceeds the cap of {cap}")]
    CapExceeded { q: u128, cap: u64 },

    #[error("elements belong to different fields")]
    FieldMismatch,

    #[error("degenerate code of length 0")]
    DegenerateCode,

    /// (a, c) or (p, e, alpha) fall outside the four closed-form regimes.
    #[error("no closed form applies: {0}")]
    NoApplicableTheorem(String),

    #[error("no closed form for this case: {0}")]
    NoClosedForm(String),

    /// A structural identity failed; indicates a broken modulus or a bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}
