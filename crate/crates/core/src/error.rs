use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("expected a real value, got {0}")]
    NotReal(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("q must be a rational number strictly between 0 and 1, got {0}")]
    InvalidQ(String),
    #[error("singular parameters: {0}")]
    SingularParameters(String),
    #[error("parameters not admissible: {0}")]
    NotAdmissible(String),
    #[error("too few nodes: need {needed}, have {available}")]
    TooFewNodes { needed: usize, available: usize },
    #[error("alternant rows must have pairwise distinct degrees")]
    RepeatedDegree,
    #[error("Vandermonde division left a nonzero remainder")]
    NonExactDivision,
    #[error("inconsistent triangular system at {0}")]
    InconsistentSystem(String),
    #[error("need at least {needed} variables to resolve degree {degree}, have {have}")]
    TooFewVariables { needed: usize, degree: usize, have: usize },
    #[error("degree {degree} exceeds the truncation degree {max}")]
    DegreeExceedsTruncation { degree: usize, max: usize },
    #[error("precision mismatch: {0} bits vs {1} bits")]
    PrecisionMismatch(u32, u32),
    #[error("grid window too small: tail bound {bound} exceeds tolerance {tol}")]
    WindowTooSmall { bound: String, tol: String },
    #[error("even N requires q to be a perfect rational square, got q = {0}")]
    EvenNeedsSquareQ(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
