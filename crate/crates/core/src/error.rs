use thiserror::Error;

#[derive(Debug, Error)]
pub enum FloqError {
    #[error("variable tables do not match")]
    VariableMismatch,
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("duplicate variable name {0:?}")]
    DuplicateVariable(String),
    #[error("missing value for variable {0:?}")]
    MissingVariable(String),
    #[error("negative exponent on ordinary variable {0:?}")]
    NegativeExponent(String),
    #[error("unsupported period n = {0}; n must be at least {1}")]
    UnsupportedPeriod(usize, usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("generic point has repeated coordinates at positions {0} and {1}")]
    NotGeneric(usize, usize),
    #[error("leading-term check failed for generator {k}: {detail}")]
    LeadingTerm { k: usize, detail: String },
    #[error("quotient dimension {size} exceeds the ceiling {ceiling}; try the specialized variant")]
    CeilingExceeded { size: usize, ceiling: usize },
    #[error("eigensolver failure: {0}")]
    Eigensolver(String),
    #[error("singular lattice generator matrix")]
    SingularLattice,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl FloqError {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            FloqError::VariableMismatch => "variable_mismatch",
            FloqError::UnknownVariable(_) => "unknown_variable",
            FloqError::DuplicateVariable(_) => "duplicate_variable",
            FloqError::MissingVariable(_) => "missing_variable",
            FloqError::NegativeExponent(_) => "negative_exponent",
            FloqError::UnsupportedPeriod(..) => "unsupported_period",
            FloqError::DimensionMismatch { .. } => "dimension_mismatch",
            FloqError::IndexOutOfRange(_) => "index_out_of_range",
            FloqError::NotGeneric(..) => "not_generic",
            FloqError::LeadingTerm { .. } => "leading_term",
            FloqError::CeilingExceeded { .. } => "ceiling_exceeded",
            FloqError::Eigensolver(_) => "eigensolver",
            FloqError::SingularLattice => "singular_lattice",
            FloqError::Parse(_) => "parse",
            FloqError::InvalidArgument(_) => "invalid_argument",
            FloqError::Io(_) => "io",
            FloqError::Json(_) => "json",
        }
    }
}

pub type Result<T, E = FloqError> = std::result::Result<T, E>;
