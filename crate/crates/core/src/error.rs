use std::fmt;

use thiserror::Error;

/// One failed structural check on a group or its dual.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub check: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.check, self.detail)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("signals or tables live on different groups")]
    GroupMismatch,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("group invariants violated:\n{}", list_violations(.0))]
    InvariantViolation(Vec<Violation>),

    #[error("kernel is singular at {} (ξ, y) pairs: {}", .pairs.len(), list_pairs(.pairs))]
    SingularKernel { pairs: Vec<(usize, usize)> },

    #[error("operation requires a cyclic group")]
    NotCyclic,

    #[error("operation requires odd order, got {0}")]
    EvenOrder(usize),

    #[error("{0} must be real-valued")]
    NotReal(&'static str),

    #[error("time margin at index {index} is negative ({value:e}); input is not a distribution")]
    MarginNegative { index: usize, value: f64 },

    #[error("unsupported audio format: {0}")]
    UnsupportedFormat(String),

    #[error("file is truncated")]
    TruncatedFile,

    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

fn list_violations(v: &[Violation]) -> String {
    v.iter().map(|x| format!("  {x}")).collect::<Vec<_>>().join("\n")
}

fn list_pairs(p: &[(usize, usize)]) -> String {
    p.iter().map(|(a, b)| format!("({a},{b})")).collect::<Vec<_>>().join(" ")
}
