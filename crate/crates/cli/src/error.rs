use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Model(#[from] arctic_core::Error),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 1 for a failed verification or a runtime failure, 2 for input the
    /// model rejects.
    pub fn exit_code(&self) -> i32 {
        use arctic_core::Error as E;
        match self {
            CliError::Config(_) => 2,
            CliError::Model(E::InvalidGeometry(_) | E::InvalidParameter(_) | E::SizeGuard { .. } | E::ZeroTotalWeight) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
