use thiserror::Error;

/// Errors raised by the matrix, scaling, bound and LCP routines.
///
/// Row indices are zero-based.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix must have at least one row")]
    Empty,
    #[error("expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("zero diagonal entry in row {0}")]
    ZeroDiagonal(usize),
    #[error("diagonal entry in row {0} is not positive")]
    NonpositiveDiagonal(usize),
    #[error("matrix is singular to working precision (pivot column {pivot})")]
    Singular { pivot: usize },
    #[error("power iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("matrix is not strictly diagonally dominant (row {row})")]
    NotSdd { row: usize },
    #[error("matrix is not Nekrasov (row {row})")]
    NotNekrasov { row: usize },
    #[error("transposed matrix is not Nekrasov (row {row})")]
    TransposeNotNekrasov { row: usize },
    #[error("initialization fraction t = {0} must lie in (0, 1)")]
    TOutOfRange(f64),
    #[error("invalid epsilon plan at row {row}: {reason}")]
    InvalidPlan { row: usize, reason: String },
    #[error("grid size must be at least 2, got {0}")]
    GridTooSmall(usize),
    #[error("method {0} has no free parameter to optimize")]
    NoFreeParameter(&'static str),
    #[error("LCP instance has no candidate point")]
    MissingCandidate,
    #[error("complementary-basis enumeration is limited to n <= {max}, got {n}")]
    TooLarge { n: usize, max: usize },
    #[error("no complementary basis yields a feasible solution")]
    NoSolution,
}

pub type Result<T> = std::result::Result<T, Error>;
