use thiserror::Error;

pub type Result<T> = std::result::Result<T, MaxminError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MaxminError {
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("{op}: expected {expected}, found {found}")]
    DimensionMismatch {
        op: &'static str,
        expected: String,
        found: String,
    },

    #[error("matrix is not symmetric (max asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("matrix is not positive definite (pivot {pivot} = {value:e})")]
    NotPositiveDefinite { pivot: usize, value: f64 },

    #[error("{0}: empty argument list")]
    EmptyList(&'static str),

    #[error("invalid tolerance {name} = {value:e} (must lie in (0, 1))")]
    InvalidTolerance { name: &'static str, value: f64 },

    #[error("ker(B) is nontrivial (dimension {kernel_dim}); Case 1 requires ker(B) = {{0}}")]
    NontrivialKernel { kernel_dim: usize },

    #[error("ker(B) not contained in ker(A)")]
    NoSolution,

    #[error(
        "no supporting-vector candidate lies in range(B) \
         ({candidates} candidates, smallest residual {min_residual:e}, tolerance {tolerance:e})"
    )]
    RangeFilter {
        candidates: usize,
        min_residual: f64,
        tolerance: f64,
    },

    #[error("ratio undefined: B x = 0")]
    ZeroDenominator,

    #[error("column {column} has zero variance")]
    DegenerateColumn { column: usize },

    #[error("singular B^T B: {0}")]
    Singular(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Io(String),
}

impl MaxminError {
    /// Short machine-greppable tag used by the command-line front end.
    pub fn kind(&self) -> &'static str {
        match self {
            MaxminError::InvalidMatrix(_) => "invalid-matrix",
            MaxminError::DimensionMismatch { .. } => "dimension",
            MaxminError::NotSymmetric { .. } => "not-symmetric",
            MaxminError::NotPositiveDefinite { .. } => "not-positive-definite",
            MaxminError::EmptyList(_) => "empty-list",
            MaxminError::InvalidTolerance { .. } => "invalid-tolerance",
            MaxminError::NontrivialKernel { .. } => "nontrivial-kernel",
            MaxminError::NoSolution => "no-solution",
            MaxminError::RangeFilter { .. } => "range-filter",
            MaxminError::ZeroDenominator => "zero-denominator",
            MaxminError::DegenerateColumn { .. } => "degenerate-column",
            MaxminError::Singular(_) => "singular",
            MaxminError::Parse { .. } => "parse",
            MaxminError::Io(_) => "io",
        }
    }

    /// Input-format and file-system problems, as opposed to mathematical outcomes.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            MaxminError::Parse { .. } | MaxminError::Io(_) | MaxminError::InvalidTolerance { .. }
        )
    }
}

impl From<std::io::Error> for MaxminError {
    fn from(e: std::io::Error) -> Self {
        MaxminError::Io(e.to_string())
    }
}
