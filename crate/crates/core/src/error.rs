use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("objects live over different rings")]
    AmbientMismatch,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("operation requires homogeneous input: {0}")]
    NotGraded(String),
    #[error("zero module where a nonzero one is required")]
    ZeroModule,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("regular sequence search failed after {attempts} candidates")]
    SearchFailed { attempts: usize },
    #[error("term in degree {term} has infinite projective dimension")]
    InfinitePd { term: i64 },
    #[error("map is not null-homotopic (obstruction in degree {degree})")]
    NotNullHomotopic { degree: i64 },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("ring is not Cohen-Macaulay (depth {depth}, dimension {dim})")]
    NotCohenMacaulay { depth: usize, dim: usize },
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}
