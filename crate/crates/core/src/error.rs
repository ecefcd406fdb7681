use thiserror::Error;

/// Errors raised by map construction, parsing and the grid algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("malformed map: {0}")]
    Structural(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("not a grid: {0}")]
    NotAGrid(String),
    #[error("empty curvature sequence")]
    EmptyCurvature,
    #[error("malformed patch: {0}")]
    MalformedPatch(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("enumeration budget exceeded: {0}")]
    Budget(String),
    /// A post-condition that must hold for every valid input failed.
    #[error("internal invariant violated: {0}")]
    Defect(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn structural(msg: impl Into<String>) -> Error {
    Error::Structural(msg.into())
}

pub(crate) fn defect(msg: impl Into<String>) -> Error {
    Error::Defect(msg.into())
}
