use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] punctual::Error),

    #[error("invalid arguments: {0}")]
    Usage(String),

    #[error("{0}")]
    Failed(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 2 for bad input, 1 for a failed computation or check.
    pub fn exit_code(&self) -> u8 {
        use punctual::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(E::Invalid(_) | E::Unknown { .. } | E::VariableMismatch(..) | E::NonUnit(_) | E::Json(_)) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

pub fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(CliError::Usage(msg.into()))
}
