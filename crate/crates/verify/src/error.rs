use thiserror::Error;

pub type Result<T> = std::result::Result<T, VerifyError>;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown check '{0}'")]
    UnknownCheck(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("'{0}' has no counterexample search")]
    NotSearchable(String),
    #[error(transparent)]
    Core(#[from] traceforge_core::Error),
}
