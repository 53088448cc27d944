use thiserror::Error;

use crate::reduce::Scheme;

pub type Result<T> = std::result::Result<T, Error>;

/// Problems found while reading the profile text format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected `candidates: <label> ...` as the first significant line")]
    MissingHeader,
    #[error("candidate list is empty")]
    NoCandidates,
    #[error("candidate `{0}` declared twice")]
    DuplicateDeclaration(String),
    #[error("{0} candidates exceed the supported maximum of {max}", max = crate::model::MAX_CANDIDATES)]
    TooManyCandidates(usize),
    #[error("expected `<multiplicity>: <label> > <label> ...`")]
    MalformedVote,
    #[error("invalid multiplicity `{0}`")]
    InvalidMultiplicity(String),
    #[error("multiplicity must be positive")]
    ZeroMultiplicity,
    #[error("unknown candidate `{0}`")]
    UnknownCandidate(String),
    #[error("candidate `{0}` appears twice in the vote")]
    DuplicateCandidate(String),
    #[error("vote does not rank `{0}`")]
    MissingCandidate(String),
    #[error("profile contains no votes")]
    EmptyProfile,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },
    #[error("ranking covers {found} candidates, expected {expected}")]
    CandidateMismatch { expected: usize, found: usize },
    #[error("invalid ranking: {0}")]
    InvalidRanking(String),
    #[error("invalid candidate set: {0}")]
    InvalidCandidates(String),
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("k must be at least 2, got {0}")]
    InvalidK(usize),
    #[error("{solver} supports k in {{2, 3}} only, got k = {k}")]
    UnsupportedK { k: usize, solver: &'static str },
    #[error("{solver} is limited to {max} candidates, got {n}")]
    TooManyCandidates {
        n: usize,
        max: usize,
        solver: &'static str,
    },
    #[error("invalid threshold: {0}")]
    InvalidThreshold(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("forced constraints contradict each other in the {scheme} scheme: {first} / {second} ({rules})")]
    ConstraintCycle {
        scheme: Scheme,
        first: String,
        second: String,
        rules: String,
    },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    pub(crate) fn parse(line: usize, kind: ParseErrorKind) -> Self {
        Error::Parse { line, kind }
    }
}
