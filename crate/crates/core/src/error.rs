use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Invalid sizes, counts or hyperparameters supplied by the caller.
    #[error("configuration error: {0}")]
    Config(String),

    /// Qubit indices, dimensions or grids that do not fit together.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("unsupported architecture: {0}")]
    UnsupportedArchitecture(String),

    #[error("training diverged at epoch {epoch}: loss is {loss}")]
    TrainingDiverged { epoch: usize, loss: f64 },
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }
}
