use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violated a documented precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A spectral point with a nonpositive imaginary part was supplied where
    /// the upper half-plane is required.
    #[error("invalid spectral point: {0}")]
    InvalidPoint(String),

    /// An iterative solver exhausted its iteration budget.
    #[error("no convergence: {0}")]
    NonConvergence(String),

    /// Matrix dimensions do not line up.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// No eigenvector had sufficient overlap with the constant vector, so the
    /// structurally guaranteed null eigenpair could not be identified.
    #[error("trivial eigenpair not found: {0}")]
    TrivialNotFound(String),

    /// The projected resolvent failed its rank-one consistency check against
    /// the plain resolvent.
    #[error("rank-one resolvent relation violated: {0}")]
    RankOneViolation(String),

    /// Brute-force graph evaluation was requested beyond the vertex cap.
    #[error("graph too large: {0}")]
    TooLarge(String),

    /// A partition failed to be a disjoint cover of the black vertex set.
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    /// Configuration rejected; the payload lists every violation found.
    #[error("invalid configuration:\n{}", .0.join("\n"))]
    Config(Vec<String>),

    #[error("malformed container: {0}")]
    Container(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
