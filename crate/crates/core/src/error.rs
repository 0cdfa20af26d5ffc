use thiserror::Error;

/// Errors raised by poset construction, surgery and the constructions built on them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("poset must have at least one node")]
    EmptyPoset,
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("order generators contain a cycle through `{0}` and `{1}`")]
    CycleDetected(String, String),
    #[error("node index {0} out of range")]
    InvalidNode(usize),
    #[error("selection is empty")]
    EmptySelection,
    #[error("subset is not complete")]
    NotCompleteSubset,
    #[error("glued relation is not antisymmetric at `{0}` and `{1}`")]
    QuotientNotAntisymmetric(String, String),
    #[error("poset has dimension zero")]
    ZeroDimensional,
    #[error("`{0}` is not a simple node")]
    NotSimpleNode(String),
    #[error("`{0}` is not a minimal node")]
    NotMinimal(String),
    #[error("`{0}` has fewer than two covers")]
    FewerThanTwoCovers(String),
    #[error("poset has no unique maximal node")]
    NoUniqueMaximal,
    #[error("poset has no unique minimal node")]
    NoUniqueMinimal,
    #[error("poset dimension {0} is below the required minimum of 2")]
    DimensionTooSmall(usize),
    #[error("size {requested} exceeds the limit of {limit}")]
    SizeLimitExceeded { requested: usize, limit: usize },
    #[error("map assignment has {got} entries but the domain has {expected} nodes")]
    NonTotalMap { expected: usize, got: usize },
    #[error("domain label `{0}` is assigned more than once")]
    DuplicateAssignment(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

pub type Result<T, E = PosetError> = std::result::Result<T, E>;
