//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("chart mismatch: {0}")]
    ChartMismatch(String),
    #[error("axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },
    #[error("degree out of range: {0}")]
    DegreeOutOfRange(String),
    #[error("form is not traceless: {0}")]
    NotTraceless(String),
    #[error("form is not closed")]
    NotClosed,
    #[error("form is not exact: {0}")]
    NotExact(String),
    #[error("not a delta-cocycle: {0}")]
    NotCocycle(String),
    #[error("maps are not mutually inverse")]
    NotInverse,
    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(String),
    #[error("unsupported substitution: {0}")]
    UnsupportedSubstitution(String),
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("form mixes terms with and without vector slots")]
    MixedKind,
    #[error("non-homogeneous form: {0}")]
    DegreeMismatch(String),
    #[error("cochain arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("graded degree inconsistency: {0}")]
    DegreeInconsistent(String),
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("invalid structure constants: {0}")]
    InvalidStructure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
