use std::io;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] arrcomb_core::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] io::Error),
    #[error("malformed input: {0}")]
    Format(String),
}

impl CliError {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(_) => "invalid_arrangement",
            CliError::Json(_) | CliError::Csv(_) | CliError::Format(_) => "malformed_input",
            CliError::Io(_) => "io",
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

pub(crate) fn malformed(msg: impl Into<String>) -> CliError {
    CliError::Format(msg.into())
}
