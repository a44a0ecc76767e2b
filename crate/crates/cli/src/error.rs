#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] zl_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid arguments: {0}")]
    Usage(String),
    #[error("{failed} of {total} identities failed")]
    VerifyFailed { failed: usize, total: usize },
}
