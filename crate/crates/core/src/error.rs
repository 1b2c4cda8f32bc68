use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("ideal is not admissible within path length bound {bound}: path {path} does not reduce to zero")]
    NonAdmissible { bound: usize, path: String },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),

    #[error("relation `{relation}` is violated at vertex `{vertex}`")]
    RelationViolated { relation: String, vertex: String },

    #[error("objects live over different algebras")]
    AlgebraMismatch,

    #[error("projective resolution still nonzero after {cap} steps")]
    ResolutionBoundExceeded { cap: usize },

    #[error("filtration search exhausted its budget of {budget} nodes")]
    SearchBudgetExceeded { budget: usize },

    #[error("isomorphism undecided: {0}")]
    Undecided(String),

    #[error("relation closure is cyclic between `{0}` and `{1}`")]
    CyclicRelation(String, String),

    #[error("endomorphism ring of `{0}` is not local")]
    LocalityFailure(String),

    #[error("collection is not standarizable: {0}")]
    NotStandarizable(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}
