use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("construction produced an invalid CSS pair: {0}")]
    InvalidCode(String),

    #[error("check matrix is not matchable: column {column} has weight {weight}")]
    NotMatchable { column: usize, weight: usize },

    #[error("defects {a} and {b} are disconnected and the graph has no boundary")]
    Disconnected { a: usize, b: usize },

    #[error("odd number of defects ({0}) on a graph without boundary")]
    OddDefects(usize),

    #[error("no perfect matching exists")]
    NoPerfectMatching,

    #[error("code encodes no logical qubits")]
    NoLogicals,

    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    BudgetExceeded { what: &'static str, needed: u128, limit: u128 },

    #[error("weight enumerator scaling error: {0}")]
    Scaling(String),

    #[error("negative coefficient {value} at weight {weight}")]
    NegativeCoefficient { weight: usize, value: i128 },

    #[error("no crossing found: {0}")]
    NoCrossing(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
