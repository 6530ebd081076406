use thiserror::Error;

/// Exit codes: 0 pass, 1 numeric mismatch, 2 input error, 3 capacity error.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] matcorr::Error),
    #[error("{0}")]
    Usage(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(matcorr::Error::Capacity { .. }) => EXIT_CAPACITY,
            CliError::Core(matcorr::Error::Certificate(_) | matcorr::Error::Construction(_)) => {
                EXIT_MISMATCH
            }
            _ => EXIT_INPUT,
        }
    }
}
