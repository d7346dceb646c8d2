use thiserror::Error;

/// Errors produced by the geometry, solving, and reduction routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("expected {expected} supports, found {found}")]
    SupportCount { expected: usize, found: usize },

    #[error("empty point set")]
    Empty,

    #[error("negative entry {value} at position {position}")]
    NegativeEntry { position: String, value: String },

    #[error("size {size} exceeds the configured limit {limit}")]
    SizeLimit { size: usize, limit: usize },

    #[error("matrix is not square ({rows} rows, row {row} has {cols} entries)")]
    NotSquare { rows: usize, row: usize, cols: usize },

    #[error("the zero polynomial cannot be a system component (index {0})")]
    ZeroPolynomial(usize),

    #[error("support of component {0} does not contain the origin")]
    MissingOrigin(usize),

    #[error("component {0} is not univariate in its own variable")]
    NotDecoupled(usize),

    #[error("root set is incomplete: located {found} of {target} zeros")]
    IncompleteRoots { found: usize, target: usize },

    #[error("0 is not certified regular: min |det J| = {min_abs_jac_det:e} <= {tolerance:e}")]
    SuspectRegularity { min_abs_jac_det: f64, tolerance: f64 },

    #[error("boundary minimum estimate {0:e} is not positive; a zero may lie on the sphere")]
    DegenerateBoundary(f64),

    #[error("perturbation radius {epsilon:e} violates the Rouche condition")]
    InvalidPlan { epsilon: f64 },

    #[error("no regular instance found after {0} attempts")]
    RetriesExhausted(usize),

    #[error("value {0} does not fit the requested integer type")]
    Overflow(String),

    #[error("reduction disagreement: {0}")]
    Disagreement(String),

    #[error("invalid rational literal {0:?}")]
    ParseRational(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// `true` for errors caused by malformed or out-of-contract input, as opposed to a
    /// computation that ran and refused to certify its result.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::DimensionMismatch { .. }
                | Error::SupportCount { .. }
                | Error::Empty
                | Error::NegativeEntry { .. }
                | Error::SizeLimit { .. }
                | Error::NotSquare { .. }
                | Error::ZeroPolynomial(_)
                | Error::MissingOrigin(_)
                | Error::NotDecoupled(_)
                | Error::ParseRational(_)
                | Error::InvalidInput(_)
                | Error::Json(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
