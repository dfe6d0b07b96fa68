use crate::{EXIT_INVALID, EXIT_RESOURCE};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("resource limit: {what} = {value} exceeds {limit} (raise it with {flag})")]
    Resource {
        what: &'static str,
        value: u64,
        limit: u64,
        flag: &'static str,
    },
    #[error(transparent)]
    Core(#[from] fcrystal_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        CliError::Invalid(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Resource { .. } | CliError::Core(fcrystal_core::Error::ResourceLimit { .. }) => {
                EXIT_RESOURCE
            }
            _ => EXIT_INVALID,
        }
    }
}
