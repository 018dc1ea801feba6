use thiserror::Error;

/// Problems with a scenario file itself, as opposed to failures of an
/// analysis it requests.
#[derive(Debug, Error)]
pub enum InputError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown reference: {0}")]
    Reference(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl InputError {
    /// Process exit code for this failure.
    pub fn exit_code(&self) -> i32 {
        2
    }
}
