use thiserror::Error;

/// Errors produced by levikit operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("incomplete stencil at node {node}: {what}")]
    Stencil { node: usize, what: &'static str },

    #[error("mixed block is not Hermitian (max asymmetry {0:.3e})")]
    NotHermitian(f64),

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("completion stalled: progress {progress:.3e} below required {required:.3e} at step {step}")]
    Stalled {
        step: usize,
        progress: f64,
        required: f64,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
