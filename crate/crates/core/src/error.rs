use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rank: need e >= 2, got {0}")]
    InvalidRank(usize),

    #[error("invalid highest weight {coefficients:?}: {reason}")]
    InvalidWeight {
        coefficients: Vec<i64>,
        reason: &'static str,
    },

    #[error("dominance reduction did not terminate within {cap} reflections")]
    IterationLimitExceeded { cap: usize },

    #[error("delta-shift search for m = {m:?} exceeded s = {cap}")]
    SearchLimitExceeded { m: Vec<i64>, cap: i64 },

    #[error("hub has level {found}, highest weight has level {expected}")]
    LevelMismatch { expected: i64, found: i64 },

    #[error("content {0:?} is not a vertex of the graph")]
    VertexNotFound(Vec<i64>),

    #[error("content {0:?} is not a weight of the module")]
    NotAMember(Vec<i64>),

    #[error("tight constraint system is singular")]
    DegenerateSimplex,

    #[error("graph enumerated to degree {have}, need at least {needed}")]
    CapTooLow { needed: i64, have: i64 },

    #[error("{0}")]
    Unsupported(&'static str),
}
