use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("row {row} has {found} entries, expected {expected}")]
    NotRectangular {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("entry ({row}, {col}) = {value} is outside {{-1, 0, 1}}")]
    InvalidEntry { row: usize, col: usize, value: i64 },

    #[error("matrix is empty")]
    Empty,

    #[error("structure is not n-full (every entry of a square matrix must be ±1)")]
    NotFull,

    #[error("structure is not standardized (first row and column must be all +1)")]
    NotStandardized,

    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("contributor uses the absent incidence (v{vertex}, e{edge})")]
    AbsentIncidence { vertex: usize, edge: usize },

    #[error("enumeration requires {required} contributors, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("n = {n} exceeds the configured cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("invalid sign probe: {0}")]
    InvalidProbe(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
