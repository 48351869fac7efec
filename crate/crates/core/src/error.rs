use thiserror::Error;

/// Errors raised by the workbench.
///
/// Identity failures are never errors: they are recorded in reports with a
/// witness. Errors are reserved for malformed input and violated
/// preconditions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("gram form is singular (unquotiented null space)")]
    SingularGram,
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("lambda map is not faithful: {0}")]
    LambdaNotFaithful(String),
    #[error("Fock depth {0} is too small (need at least {1})")]
    DepthTooSmall(usize, usize),
    #[error("relative tensor product is zero-dimensional")]
    DegenerateQuotient,
    #[error("operator is not in the span of products of left actions: {0}")]
    NotInBCirc(String),
    #[error("standing assumptions violated: {0}")]
    AssumptionsViolated(String),
    #[error("operator does not descend to the balanced tensor product: {0}")]
    NotBalanced(String),
    #[error("parse error at {context}: {message}")]
    ParseError { context: String, message: String },
    #[error("schema version mismatch: expected {expected}, found {found}")]
    SchemaVersionMismatch { expected: String, found: String },
    #[error("Fock space dimension {dim} exceeds cap {cap}")]
    TooLarge { dim: usize, cap: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
