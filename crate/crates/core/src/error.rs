use thiserror::Error;

/// Errors surfaced by the exact-geometry routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("matrix is not totally positive")]
    NotTotallyPositive,

    #[error("Z matrix fails the genericity assumption; refusing to stratify")]
    NonGenericZ,

    #[error("image has rank < 2; the amplituhedron map is undefined here")]
    RankCollapse,

    #[error("point does not lie in the requested chart (pivot coordinate is zero)")]
    ChartMismatch,

    #[error("kernel dimension {got}, expected {expected}")]
    KernelDimension { expected: usize, got: usize },

    #[error("verification failed: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
