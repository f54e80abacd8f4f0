use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable lists differ: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),

    #[error("constant term {0} is not a unit")]
    NonUnit(String),

    #[error(
        "series is not rational with the claimed denominator at this truncation \
         (coefficient of q^{degree} is {value})"
    )]
    NotRational { degree: usize, value: String },

    #[error("truncation {have} is too small, at least {need} is required")]
    TruncationTooSmall { have: usize, need: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("unknown {kind} `{name}`; known: {known}")]
    Unknown {
        kind: &'static str,
        name: String,
        known: String,
    },

    #[error("identity `{name}` failed: {detail}")]
    IdentityFailed { name: String, detail: String },

    #[error("could not resolve the surface exponent: {0}")]
    Unresolved(String),

    #[error("malformed json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}
