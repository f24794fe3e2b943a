use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid Lie type: {0}")]
    InvalidLieType(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("simple-root index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("parabolic subset contains every simple root; the flag variety is a point")]
    EmptyTangentSpace,
    #[error("weight is zero")]
    ZeroWeight,
    #[error("Kähler class is not positive: {0}")]
    NonPositiveClass(String),
    #[error("weight is not semi-negative: (lambda, {root}) = {value} > 0")]
    NotSemiNegative { root: String, value: String },
    #[error("division by zero: (lambda, {0}) = 0, weight is not strictly negative")]
    DivisionByZero(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("datum not available for this case: {0}")]
    WrongCase(String),
    #[error("grid point {0} lies outside the open momentum interval")]
    GridOutOfInterval(String),
    #[error("step too large: local error estimate {estimate:e} exceeds {bound:e} at tau = {tau}")]
    StepTooLarge { estimate: f64, bound: f64, tau: f64 },
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("value error at {path}: {message}")]
    Value { path: String, message: String },
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit status for the command-line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotSemiNegative { .. } | Error::ZeroWeight | Error::DivisionByZero(_) => 3,
            Error::InternalInconsistency(_) => 4,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
