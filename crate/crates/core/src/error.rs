use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("index {index} out of range for {len} sites")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is not unitary (deviation {0:.3e})")]
    NonUnitary(f64),

    #[error("state is not normalized (norm {0:.12})")]
    NotNormalized(f64),

    #[error("reduced density matrix side {side} exceeds cap {cap}")]
    MemoryCap { side: usize, cap: usize },

    #[error("corrupted density matrix: eigenvalue {0:.3e} below tolerance")]
    CorruptedInput(f64),

    #[error("inconsistent tableau: {0}")]
    InconsistentTableau(String),

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("eigensolver did not converge (residual {0:.3e})")]
    NoConvergence(f64),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by user input rather than numerics.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::Config(_)
                | Error::Parse { .. }
                | Error::Io(_)
                | Error::InvalidArgument(_)
                | Error::IndexOutOfRange { .. }
                | Error::Dimension { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
