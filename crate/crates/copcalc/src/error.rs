use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the mathematical operations and the CLI surface.
///
/// [`Error::is_validation`] separates malformed input (CLI exit code 2) from
/// violated mathematical preconditions (exit code 3).
#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate composition")]
    DegenerateComposition,
    #[error("degenerate map: ad - bc = 0")]
    DegenerateMap,
    #[error("evaluation at pole")]
    EvaluationAtPole,
    #[error("pole inside disk")]
    PoleInsideDisk,
    #[error("not parabolic")]
    NotParabolic,
    #[error("not a self-map")]
    NotSelfMap,
    #[error("not a self-map of the disk")]
    NotSelfMapOfDisk,
    #[error("boundary value mismatch")]
    BoundaryValueMismatch,
    #[error("degenerate jet")]
    DegenerateJet,
    #[error("alpha not in F")]
    AlphaNotInF,
    #[error("not a self-map jet")]
    NotSelfMapJet,
    #[error("phi not admissible")]
    PhiNotAdmissible,
    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),
    #[error("not in canonical form")]
    NotCanonicalForm,
    #[error("outside admissible translation range")]
    OutsideTranslationRange,
    #[error("mismatched domain endpoints")]
    MismatchedEndpoints,
    #[error("construction overflow")]
    ConstructionOverflow,
    #[error("order of contact exceeds two")]
    ContactOrderExceedsTwo,
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("{0}")]
    Precondition(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for schema/parse problems as opposed to mathematical ones.
    pub fn is_validation(&self) -> bool {
        matches!(self, Error::Validation(_) | Error::Json(_) | Error::Io(_))
    }
}
